#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "postedit/models/dual_encoder.hpp"
#include "postedit/models/identifier.hpp"
#include "postedit/nn/layers.hpp"
#include "postedit/tokenize.hpp"

namespace postedit::models {

// Coarse document statistics for the Delta baseline: sentence count,
// word-level MT<->PE edit distance, and the three word counts. Each is
// binned before embedding.
struct DeltaFeatures {
  std::int64_t sentence_count = 0;
  std::int64_t edit_distance = 0;
  std::int64_t source_words = 0;
  std::int64_t mt_words = 0;
  std::int64_t pe_words = 0;
};

std::size_t word_edit_distance(const std::vector<std::string>& a,
                               const std::vector<std::string>& b);

DeltaFeatures featurize_delta(const TokenizedDoc& source, const TokenizedDoc& mt,
                              const TokenizedDoc& pe);

// Bin indices using the wait/word-jump edge set (16 bins per feature).
std::array<std::size_t, 5> delta_bins(const DeltaFeatures& f);

enum class BaselineKind { delta, mt, pe, mt_pe, mt_pe_att };

const char* baseline_kind_name(BaselineKind k);
BaselineKind baseline_kind_from_name(const std::string& name);

struct BaselineSample {
  std::vector<std::uint32_t> mt_ids;
  std::vector<std::uint32_t> pe_ids;
  std::array<std::size_t, 5> delta{};
  std::size_t label = 0;
};

struct BaselineConfig {
  EncoderConfig encoder;
  std::size_t ff_dim = 128;
  std::size_t delta_embed_dim = 16;
  double delta_dropout = 0.3;
};

// The five editor-identification baselines that look only at the initial
// and final text (or coarse statistics of the difference), never at the
// action sequence.
class BaselineModel {
 public:
  BaselineModel(BaselineKind kind, BaselineConfig cfg, std::size_t text_vocab_size,
                std::vector<std::string> labels, std::uint64_t init_seed);

  double loss_and_grads(const BaselineSample& sample, bool train, Rng& rng,
                        nn::TensorMap* grads) const;
  std::vector<double> predict(const BaselineSample& sample) const;

  nn::TensorMap& params() { return params_; }
  const nn::TensorMap& params() const { return params_; }
  const std::vector<std::string>& labels() const { return labels_; }
  BaselineKind kind() const { return kind_; }

 private:
  struct Forward;
  void run_forward(const BaselineSample& sample, bool train, Rng* rng,
                   Forward& f) const;
  void run_backward(const BaselineSample& sample, Forward& f,
                    const std::vector<double>& dlogits, nn::TensorMap& grads) const;

  BaselineKind kind_;
  BaselineConfig cfg_;
  std::vector<std::string> labels_;

  // delta
  std::array<nn::Embedding, 5> feat_emb_;
  // single-encoder kinds
  nn::Embedding emb_;
  nn::BiLstmEncoder enc_;
  nn::BiLstmEncoder enc2_;  // mt_pe second encoder
  // attention kind
  DualAttEncoder dual_;

  nn::Linear ff_;
  nn::Linear out_;
  nn::Dropout dropout_;
  nn::TensorMap params_;
};

inline std::vector<double> predict_probs(const BaselineModel& m,
                                         const BaselineSample& s) {
  return m.predict(s);
}

}  // namespace postedit::models
