#include "postedit/models/baselines.hpp"

#include <algorithm>

#include "postedit/error.hpp"
#include "postedit/nn/loss.hpp"
#include "postedit/symbolizer.hpp"

namespace postedit::models {

using nn::TensorMap;

std::size_t word_edit_distance(const std::vector<std::string>& a,
                               const std::vector<std::string>& b) {
  const std::size_t n = a.size(), m = b.size();
  std::vector<std::size_t> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

DeltaFeatures featurize_delta(const TokenizedDoc& source, const TokenizedDoc& mt,
                              const TokenizedDoc& pe) {
  DeltaFeatures f;
  f.sentence_count = static_cast<std::int64_t>(mt.sentences.size());
  f.edit_distance = static_cast<std::int64_t>(word_edit_distance(mt.flat(), pe.flat()));
  f.source_words = static_cast<std::int64_t>(source.word_count());
  f.mt_words = static_cast<std::int64_t>(mt.word_count());
  f.pe_words = static_cast<std::int64_t>(pe.word_count());
  return f;
}

std::array<std::size_t, 5> delta_bins(const DeltaFeatures& f) {
  return {bin_value(BinKind::wait, f.sentence_count),
          bin_value(BinKind::wait, f.edit_distance),
          bin_value(BinKind::wait, f.source_words),
          bin_value(BinKind::wait, f.mt_words),
          bin_value(BinKind::wait, f.pe_words)};
}

const char* baseline_kind_name(BaselineKind k) {
  switch (k) {
    case BaselineKind::delta: return "delta";
    case BaselineKind::mt: return "mt";
    case BaselineKind::pe: return "pe";
    case BaselineKind::mt_pe: return "mt_pe";
    case BaselineKind::mt_pe_att: return "mt_pe_att";
  }
  return "?";
}

BaselineKind baseline_kind_from_name(const std::string& name) {
  for (BaselineKind k : {BaselineKind::delta, BaselineKind::mt, BaselineKind::pe,
                         BaselineKind::mt_pe, BaselineKind::mt_pe_att})
    if (name == baseline_kind_name(k)) return k;
  throw Error(Errc::usage_error, "unknown baseline kind '" + name + "'");
}

namespace {
constexpr std::size_t kDeltaBins = 16;
}

BaselineModel::BaselineModel(BaselineKind kind, BaselineConfig cfg,
                             std::size_t text_vocab_size,
                             std::vector<std::string> labels,
                             std::uint64_t init_seed)
    : kind_(kind), cfg_(cfg), labels_(std::move(labels)) {
  if (labels_.size() < 2)
    throw Error(Errc::not_enough_editors, "baseline needs at least 2 editors");
  Rng rng(init_seed);
  const std::size_t H = cfg_.encoder.hidden_dim;
  const std::size_t K = labels_.size();
  dropout_ = nn::Dropout{kind == BaselineKind::delta ? cfg_.delta_dropout
                                                     : cfg_.encoder.dropout_rate};
  switch (kind) {
    case BaselineKind::delta: {
      for (std::size_t i = 0; i < 5; ++i) {
        feat_emb_[i] =
            nn::Embedding{"delta.f" + std::to_string(i), kDeltaBins, cfg_.delta_embed_dim};
        feat_emb_[i].init(params_, rng);
      }
      ff_ = nn::Linear{"ff", 5 * cfg_.delta_embed_dim, cfg_.ff_dim};
      ff_.init(params_, rng);
      out_ = nn::Linear{"out", cfg_.ff_dim, K};
      out_.init(params_, rng);
      break;
    }
    case BaselineKind::mt:
    case BaselineKind::pe: {
      emb_ = nn::Embedding{"emb", text_vocab_size, cfg_.encoder.embed_dim};
      emb_.init(params_, rng);
      enc_ = nn::BiLstmEncoder{"enc", cfg_.encoder.embed_dim, H,
                               cfg_.encoder.num_layers};
      enc_.init(params_, rng);
      ff_ = nn::Linear{"ff", 2 * H, cfg_.ff_dim};
      ff_.init(params_, rng);
      out_ = nn::Linear{"out", cfg_.ff_dim, K};
      out_.init(params_, rng);
      break;
    }
    case BaselineKind::mt_pe: {
      emb_ = nn::Embedding{"emb", text_vocab_size, cfg_.encoder.embed_dim};
      emb_.init(params_, rng);
      enc_ = nn::BiLstmEncoder{"enc_mt", cfg_.encoder.embed_dim, H,
                               cfg_.encoder.num_layers};
      enc_.init(params_, rng);
      enc2_ = nn::BiLstmEncoder{"enc_pe", cfg_.encoder.embed_dim, H,
                                cfg_.encoder.num_layers};
      enc2_.init(params_, rng);
      ff_ = nn::Linear{"ff", 4 * H, cfg_.ff_dim};
      ff_.init(params_, rng);
      out_ = nn::Linear{"out", cfg_.ff_dim, K};
      out_.init(params_, rng);
      break;
    }
    case BaselineKind::mt_pe_att: {
      dual_ = DualAttEncoder{"dual", text_vocab_size, cfg_.encoder, cfg_.ff_dim};
      dual_.init(params_, rng);
      out_ = nn::Linear{"out", dual_.out_dim(), K};
      out_.init(params_, rng);
      break;
    }
  }
}

struct BaselineModel::Forward {
  // delta
  std::array<std::vector<double>, 5> feats;
  // single / dual encoder
  std::vector<double> mt_xs, pe_xs;
  nn::BiLstmEncoder::Cache mt_enc, pe_enc;
  DualAttEncoder::Cache dual;
  // shared tail
  std::vector<double> state;      // input of ff (or of out for mt_pe_att)
  std::vector<double> drop_mask;
  std::vector<double> hidden;     // ff output (post ReLU)
  std::vector<double> logits;
};

void BaselineModel::run_forward(const BaselineSample& sample, bool train, Rng* rng,
                                Forward& f) const {
  const std::size_t H = cfg_.encoder.hidden_dim;
  const std::size_t K = labels_.size();
  f.logits.resize(K);

  auto concat_final = [&](const nn::BiLstmEncoder& enc,
                          const nn::BiLstmEncoder::Cache& c, double* dst) {
    const double* ff = enc.final_fwd(c);
    const double* fb = enc.final_bwd(c);
    for (std::size_t j = 0; j < H; ++j) {
      dst[j] = ff[j];
      dst[H + j] = fb[j];
    }
  };

  switch (kind_) {
    case BaselineKind::delta: {
      const std::size_t De = cfg_.delta_embed_dim;
      f.state.resize(5 * De);
      for (std::size_t i = 0; i < 5; ++i) {
        const std::vector<std::uint32_t> id{
            static_cast<std::uint32_t>(sample.delta[i])};
        feat_emb_[i].forward(params_, id, f.feats[i]);
        std::copy(f.feats[i].begin(), f.feats[i].end(), f.state.begin() + i * De);
      }
      break;
    }
    case BaselineKind::mt:
    case BaselineKind::pe: {
      const auto& ids = kind_ == BaselineKind::mt ? sample.mt_ids : sample.pe_ids;
      emb_.forward(params_, ids, f.mt_xs);
      enc_.forward(params_, f.mt_xs.data(), ids.size(), f.mt_enc);
      f.state.resize(2 * H);
      concat_final(enc_, f.mt_enc, f.state.data());
      break;
    }
    case BaselineKind::mt_pe: {
      emb_.forward(params_, sample.mt_ids, f.mt_xs);
      emb_.forward(params_, sample.pe_ids, f.pe_xs);
      enc_.forward(params_, f.mt_xs.data(), sample.mt_ids.size(), f.mt_enc);
      enc2_.forward(params_, f.pe_xs.data(), sample.pe_ids.size(), f.pe_enc);
      f.state.resize(4 * H);
      concat_final(enc_, f.mt_enc, f.state.data());
      concat_final(enc2_, f.pe_enc, f.state.data() + 2 * H);
      break;
    }
    case BaselineKind::mt_pe_att: {
      dual_.forward(params_, sample.mt_ids, sample.pe_ids, f.dual);
      f.state = f.dual.v;
      break;
    }
  }

  if (train && rng)
    dropout_.forward(f.state.data(), f.state.size(), true, *rng, f.drop_mask);

  if (kind_ == BaselineKind::mt_pe_att) {
    out_.forward(params_, f.state.data(), f.logits.data());
  } else {
    f.hidden.resize(cfg_.ff_dim);
    ff_.forward(params_, f.state.data(), f.hidden.data());
    nn::relu(f.hidden.data(), cfg_.ff_dim);
    out_.forward(params_, f.hidden.data(), f.logits.data());
  }
}

void BaselineModel::run_backward(const BaselineSample& sample, Forward& f,
                                 const std::vector<double>& dlogits,
                                 TensorMap& grads) const {
  const std::size_t H = cfg_.encoder.hidden_dim;
  std::vector<double> dstate(f.state.size(), 0.0);

  if (kind_ == BaselineKind::mt_pe_att) {
    out_.backward(params_, grads, f.state.data(), dlogits.data(), dstate.data());
  } else {
    std::vector<double> dhidden(cfg_.ff_dim, 0.0);
    out_.backward(params_, grads, f.hidden.data(), dlogits.data(), dhidden.data());
    nn::relu_backward(f.hidden.data(), dhidden.data(), cfg_.ff_dim);
    ff_.backward(params_, grads, f.state.data(), dhidden.data(), dstate.data());
  }
  dropout_.backward(dstate.data(), dstate.size(), f.drop_mask);

  switch (kind_) {
    case BaselineKind::delta: {
      const std::size_t De = cfg_.delta_embed_dim;
      for (std::size_t i = 0; i < 5; ++i) {
        const std::vector<std::uint32_t> id{
            static_cast<std::uint32_t>(sample.delta[i])};
        const std::vector<double> dfeat(dstate.begin() + i * De,
                                        dstate.begin() + (i + 1) * De);
        feat_emb_[i].backward(grads, id, dfeat);
      }
      break;
    }
    case BaselineKind::mt:
    case BaselineKind::pe: {
      const auto& ids = kind_ == BaselineKind::mt ? sample.mt_ids : sample.pe_ids;
      std::vector<double> dxs(f.mt_xs.size(), 0.0);
      enc_.backward(params_, grads, f.mt_enc, {}, dstate.data(), dstate.data() + H,
                    dxs.data());
      emb_.backward(grads, ids, dxs);
      break;
    }
    case BaselineKind::mt_pe: {
      std::vector<double> dxs_mt(f.mt_xs.size(), 0.0);
      enc_.backward(params_, grads, f.mt_enc, {}, dstate.data(), dstate.data() + H,
                    dxs_mt.data());
      std::vector<double> dxs_pe(f.pe_xs.size(), 0.0);
      enc2_.backward(params_, grads, f.pe_enc, {}, dstate.data() + 2 * H,
                     dstate.data() + 3 * H, dxs_pe.data());
      emb_.backward(grads, sample.mt_ids, dxs_mt);
      emb_.backward(grads, sample.pe_ids, dxs_pe);
      break;
    }
    case BaselineKind::mt_pe_att: {
      dual_.backward(params_, grads, f.dual, dstate.data());
      break;
    }
  }
}

double BaselineModel::loss_and_grads(const BaselineSample& sample, bool train,
                                     Rng& rng, TensorMap* grads) const {
  Forward f;
  run_forward(sample, train, &rng, f);
  std::vector<double> dlogits;
  const double loss =
      nn::softmax_cross_entropy(f.logits, sample.label, grads ? &dlogits : nullptr);
  if (grads) run_backward(sample, f, dlogits, *grads);
  return loss;
}

std::vector<double> BaselineModel::predict(const BaselineSample& sample) const {
  Forward f;
  run_forward(sample, false, nullptr, f);
  return nn::softmax(f.logits);
}

}  // namespace postedit::models
