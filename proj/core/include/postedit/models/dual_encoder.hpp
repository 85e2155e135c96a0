#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "postedit/models/identifier.hpp"
#include "postedit/nn/attention.hpp"
#include "postedit/nn/layers.hpp"
#include "postedit/nn/lstm.hpp"

namespace postedit::models {

// Two bidirectional encoders over a shared token embedding, aligned by
// symmetric attention: each side's final state queries the other side's
// hidden states, and [final; context] passes through a ReLU layer. The
// output is the concatenation of both sides' vectors (2 * ff_dim).
struct DualAttEncoder {
  nn::Embedding emb;
  nn::BiLstmEncoder enc_a, enc_b;
  nn::Linear ff_a, ff_b;
  std::size_t ff_dim = 0;

  DualAttEncoder() = default;
  DualAttEncoder(const std::string& prefix, std::size_t vocab,
                 const EncoderConfig& cfg, std::size_t ff);

  void init(nn::TensorMap& params, Rng& rng) const;

  struct Cache {
    std::vector<std::uint32_t> a_ids, b_ids;
    std::vector<double> a_xs, b_xs;
    nn::BiLstmEncoder::Cache a_enc, b_enc;
    std::vector<double> q_a, q_b;        // concatenated final states (2H)
    std::vector<double> ctx_a, ctx_b;    // context over the *other* side
    nn::AttentionCache att_over_b, att_over_a;
    std::vector<double> in_a, in_b;      // [q; ctx] feed-forward inputs
    std::vector<double> v;               // [v_a; v_b] output (2 * ff_dim)
  };

  void forward(const nn::TensorMap& params, const std::vector<std::uint32_t>& a_ids,
               const std::vector<std::uint32_t>& b_ids, Cache& cache) const;

  void backward(const nn::TensorMap& params, nn::TensorMap& grads,
                const Cache& cache, const double* dv) const;

  std::size_t out_dim() const { return 2 * ff_dim; }
};

}  // namespace postedit::models
