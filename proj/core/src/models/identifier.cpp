#include "postedit/models/identifier.hpp"

#include "postedit/error.hpp"
#include "postedit/nn/loss.hpp"

namespace postedit::models {

using nn::TensorMap;

IdentifierModel::IdentifierModel(EncoderConfig cfg, std::size_t repr_dim,
                                 std::size_t symbol_count,
                                 std::vector<std::string> labels,
                                 std::uint64_t init_seed)
    : cfg_(cfg),
      repr_dim_(repr_dim),
      labels_(std::move(labels)),
      emb_{"emb", symbol_count, cfg.embed_dim},
      enc_{"enc", cfg.embed_dim, cfg.hidden_dim, cfg.num_layers},
      repr_{"repr", 2 * cfg.hidden_dim, repr_dim},
      out_{"out", repr_dim, labels_.size()},
      dropout_{cfg.dropout_rate} {
  if (labels_.size() < 2)
    throw Error(Errc::not_enough_editors, "identifier needs at least 2 editors");
  Rng rng(init_seed);
  emb_.init(params_, rng);
  enc_.init(params_, rng);
  repr_.init(params_, rng);
  out_.init(params_, rng);
}

void IdentifierModel::run_forward(const std::vector<std::uint32_t>& ids, bool train,
                                  Rng* rng, Forward& f) const {
  if (ids.empty()) throw Error(Errc::empty_input, "empty symbol sequence");
  emb_.forward(params_, ids, f.xs);
  enc_.forward(params_, f.xs.data(), ids.size(), f.enc);

  const std::size_t H = cfg_.hidden_dim;
  f.state.resize(2 * H);
  const double* ff = enc_.final_fwd(f.enc);
  const double* fb = enc_.final_bwd(f.enc);
  for (std::size_t j = 0; j < H; ++j) {
    f.state[j] = ff[j];
    f.state[H + j] = fb[j];
  }
  if (train && rng) dropout_.forward(f.state.data(), 2 * H, true, *rng, f.drop_mask);

  f.h.resize(repr_dim_);
  repr_.forward(params_, f.state.data(), f.h.data());
  nn::relu(f.h.data(), repr_dim_);

  f.logits.resize(labels_.size());
  out_.forward(params_, f.h.data(), f.logits.data());
}

double IdentifierModel::loss_and_grads(const SeqSample& sample, bool train, Rng& rng,
                                       TensorMap* grads) const {
  Forward f;
  run_forward(sample.ids, train, &rng, f);
  std::vector<double> dlogits;
  const double loss =
      nn::softmax_cross_entropy(f.logits, sample.label, grads ? &dlogits : nullptr);
  if (!grads) return loss;

  std::vector<double> dh(repr_dim_, 0.0);
  out_.backward(params_, *grads, f.h.data(), dlogits.data(), dh.data());
  nn::relu_backward(f.h.data(), dh.data(), repr_dim_);

  std::vector<double> dstate(f.state.size(), 0.0);
  repr_.backward(params_, *grads, f.state.data(), dh.data(), dstate.data());
  dropout_.backward(dstate.data(), dstate.size(), f.drop_mask);

  std::vector<double> dxs(f.xs.size(), 0.0);
  const std::size_t H = cfg_.hidden_dim;
  enc_.backward(params_, *grads, f.enc, {}, dstate.data(), dstate.data() + H,
                dxs.data());
  emb_.backward(*grads, sample.ids, dxs);
  return loss;
}

std::vector<double> IdentifierModel::predict(
    const std::vector<std::uint32_t>& ids) const {
  Forward f;
  run_forward(ids, false, nullptr, f);
  return nn::softmax(f.logits);
}

std::vector<double> IdentifierModel::session_embedding(
    const std::vector<std::uint32_t>& ids) const {
  Forward f;
  run_forward(ids, false, nullptr, f);
  return f.h;
}

}  // namespace postedit::models
