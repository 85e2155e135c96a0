#pragma once

#include <cstdint>
#include <vector>

#include "postedit/models/dual_encoder.hpp"
#include "postedit/nn/layers.hpp"

namespace postedit::models {

struct TimeSample {
  std::vector<std::uint32_t> source_ids;
  std::vector<std::uint32_t> mt_ids;
  std::vector<double> editor_vec;  // zero vector in no-editor baseline mode
  double target = 0.0;             // log seconds per source word
};

// Post-editing-time regressor: dual encoder with symmetric attention over
// the source and MT texts; the editor embedding joins the feed-forward
// input; a scalar head predicts log time per source word (MSE loss).
class TimePredictor {
 public:
  TimePredictor(EncoderConfig cfg, std::size_t ff_dim, std::size_t text_vocab_size,
                std::size_t editor_dim, std::uint64_t init_seed);

  double loss_and_grads(const TimeSample& sample, bool train, Rng& rng,
                        nn::TensorMap* grads) const;
  double predict(const TimeSample& sample) const;

  nn::TensorMap& params() { return params_; }
  const nn::TensorMap& params() const { return params_; }
  std::size_t editor_dim() const { return editor_dim_; }

 private:
  struct Forward;
  double run_forward(const TimeSample& sample, bool train, Rng* rng,
                     Forward& f) const;

  std::size_t ff_dim_;
  std::size_t editor_dim_;
  DualAttEncoder dual_;
  nn::Linear mix_;   // [v ; editor_vec] -> ff_dim, ReLU
  nn::Linear head_;  // ff_dim -> 1
  nn::Dropout dropout_;
  nn::TensorMap params_;
};

}  // namespace postedit::models
