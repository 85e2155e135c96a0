#include "postedit/models/dual_encoder.hpp"

#include "postedit/error.hpp"

namespace postedit::models {

using nn::TensorMap;

DualAttEncoder::DualAttEncoder(const std::string& prefix, std::size_t vocab,
                               const EncoderConfig& cfg, std::size_t ff)
    : emb{prefix + ".emb", vocab, cfg.embed_dim},
      enc_a{prefix + ".enc_a", cfg.embed_dim, cfg.hidden_dim, cfg.num_layers},
      enc_b{prefix + ".enc_b", cfg.embed_dim, cfg.hidden_dim, cfg.num_layers},
      ff_a{prefix + ".ff_a", 4 * cfg.hidden_dim, ff},
      ff_b{prefix + ".ff_b", 4 * cfg.hidden_dim, ff},
      ff_dim{ff} {}

void DualAttEncoder::init(TensorMap& params, Rng& rng) const {
  emb.init(params, rng);
  enc_a.init(params, rng);
  enc_b.init(params, rng);
  ff_a.init(params, rng);
  ff_b.init(params, rng);
}

void DualAttEncoder::forward(const TensorMap& params,
                             const std::vector<std::uint32_t>& a_ids,
                             const std::vector<std::uint32_t>& b_ids,
                             Cache& cache) const {
  if (a_ids.empty() || b_ids.empty())
    throw Error(Errc::empty_input, "dual encoder needs non-empty sequences");
  cache.a_ids = a_ids;
  cache.b_ids = b_ids;
  emb.forward(params, a_ids, cache.a_xs);
  emb.forward(params, b_ids, cache.b_xs);
  enc_a.forward(params, cache.a_xs.data(), a_ids.size(), cache.a_enc);
  enc_b.forward(params, cache.b_xs.data(), b_ids.size(), cache.b_enc);

  const std::size_t H = enc_a.hidden;
  const std::size_t D = 2 * H;
  auto concat_final = [&](const nn::BiLstmEncoder& enc,
                          const nn::BiLstmEncoder::Cache& c, std::vector<double>& q) {
    q.resize(D);
    const double* ff = enc.final_fwd(c);
    const double* fb = enc.final_bwd(c);
    for (std::size_t j = 0; j < H; ++j) {
      q[j] = ff[j];
      q[H + j] = fb[j];
    }
  };
  concat_final(enc_a, cache.a_enc, cache.q_a);
  concat_final(enc_b, cache.b_enc, cache.q_b);

  // a's final state attends over b's hidden states, and symmetrically
  cache.ctx_b.resize(D);
  nn::attend(cache.q_a.data(), cache.b_enc.outputs.data(), b_ids.size(), D,
             cache.ctx_b.data(), cache.att_over_b);
  cache.ctx_a.resize(D);
  nn::attend(cache.q_b.data(), cache.a_enc.outputs.data(), a_ids.size(), D,
             cache.ctx_a.data(), cache.att_over_a);

  cache.in_a.resize(2 * D);
  cache.in_b.resize(2 * D);
  for (std::size_t j = 0; j < D; ++j) {
    cache.in_a[j] = cache.q_a[j];
    cache.in_a[D + j] = cache.ctx_b[j];
    cache.in_b[j] = cache.q_b[j];
    cache.in_b[D + j] = cache.ctx_a[j];
  }

  cache.v.resize(2 * ff_dim);
  ff_a.forward(params, cache.in_a.data(), cache.v.data());
  ff_b.forward(params, cache.in_b.data(), cache.v.data() + ff_dim);
  nn::relu(cache.v.data(), 2 * ff_dim);
}

void DualAttEncoder::backward(const TensorMap& params, TensorMap& grads,
                              const Cache& cache, const double* dv) const {
  const std::size_t H = enc_a.hidden;
  const std::size_t D = 2 * H;

  std::vector<double> dva(dv, dv + ff_dim);
  std::vector<double> dvb(dv + ff_dim, dv + 2 * ff_dim);
  nn::relu_backward(cache.v.data(), dva.data(), ff_dim);
  nn::relu_backward(cache.v.data() + ff_dim, dvb.data(), ff_dim);

  std::vector<double> din_a(2 * D, 0.0), din_b(2 * D, 0.0);
  ff_a.backward(params, grads, cache.in_a.data(), dva.data(), din_a.data());
  ff_b.backward(params, grads, cache.in_b.data(), dvb.data(), din_b.data());

  std::vector<double> dq_a(din_a.begin(), din_a.begin() + D);
  std::vector<double> dctx_b(din_a.begin() + D, din_a.end());
  std::vector<double> dq_b(din_b.begin(), din_b.begin() + D);
  std::vector<double> dctx_a(din_b.begin() + D, din_b.end());

  std::vector<double> d_b_outputs(cache.b_enc.outputs.size(), 0.0);
  nn::attend_backward(cache.q_a.data(), cache.b_enc.outputs.data(),
                      cache.b_ids.size(), D, cache.att_over_b, dctx_b.data(),
                      dq_a.data(), d_b_outputs.data());
  std::vector<double> d_a_outputs(cache.a_enc.outputs.size(), 0.0);
  nn::attend_backward(cache.q_b.data(), cache.a_enc.outputs.data(),
                      cache.a_ids.size(), D, cache.att_over_a, dctx_a.data(),
                      dq_b.data(), d_a_outputs.data());

  std::vector<double> dxs_a(cache.a_xs.size(), 0.0);
  enc_a.backward(params, grads, cache.a_enc, d_a_outputs, dq_a.data(),
                 dq_a.data() + H, dxs_a.data());
  std::vector<double> dxs_b(cache.b_xs.size(), 0.0);
  enc_b.backward(params, grads, cache.b_enc, d_b_outputs, dq_b.data(),
                 dq_b.data() + H, dxs_b.data());

  emb.backward(grads, cache.a_ids, dxs_a);
  emb.backward(grads, cache.b_ids, dxs_b);
}

}  // namespace postedit::models
