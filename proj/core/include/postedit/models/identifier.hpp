#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "postedit/nn/layers.hpp"
#include "postedit/nn/lstm.hpp"
#include "postedit/nn/tensor.hpp"
#include "postedit/rng.hpp"

namespace postedit::models {

// Shared recurrent-encoder hyperparameters.
struct EncoderConfig {
  std::size_t embed_dim = 64;
  std::size_t hidden_dim = 128;  // per direction
  std::size_t num_layers = 2;
  double dropout_rate = 0.3;
};

struct SeqSample {
  std::vector<std::uint32_t> ids;
  std::size_t label = 0;
};

// Editor identifier over action-symbol sequences: embedding, 2-layer
// bidirectional encoder, dropout, a ReLU representation layer whose output
// is the session embedding h, and a softmax projection.
class IdentifierModel {
 public:
  IdentifierModel(EncoderConfig cfg, std::size_t repr_dim, std::size_t symbol_count,
                  std::vector<std::string> labels, std::uint64_t init_seed);

  double loss_and_grads(const SeqSample& sample, bool train, Rng& rng,
                        nn::TensorMap* grads) const;

  // Probability vector over editors (evaluation mode).
  std::vector<double> predict(const std::vector<std::uint32_t>& ids) const;

  // The representation-layer output h (post-ReLU, evaluation mode).
  std::vector<double> session_embedding(const std::vector<std::uint32_t>& ids) const;

  nn::TensorMap& params() { return params_; }
  const nn::TensorMap& params() const { return params_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t repr_dim() const { return repr_dim_; }
  std::size_t symbol_count() const { return emb_.vocab; }
  const EncoderConfig& config() const { return cfg_; }

 private:
  struct Forward {
    std::vector<double> xs;
    nn::BiLstmEncoder::Cache enc;
    std::vector<double> state;  // 2H after dropout
    std::vector<double> drop_mask;
    std::vector<double> h;       // repr layer output
    std::vector<double> logits;
  };
  void run_forward(const std::vector<std::uint32_t>& ids, bool train, Rng* rng,
                   Forward& f) const;

  EncoderConfig cfg_;
  std::size_t repr_dim_;
  std::vector<std::string> labels_;
  nn::Embedding emb_;
  nn::BiLstmEncoder enc_;
  nn::Linear repr_;
  nn::Linear out_;
  nn::Dropout dropout_;
  nn::TensorMap params_;
};

inline std::vector<double> predict_probs(const IdentifierModel& m,
                                         const SeqSample& s) {
  return m.predict(s.ids);
}

}  // namespace postedit::models
