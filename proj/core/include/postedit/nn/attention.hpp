#pragma once

#include <cstddef>
#include <vector>

#include "postedit/nn/tensor.hpp"

namespace postedit::nn {

// Scaled dot-product attention with keys == values:
//   score_i = (q . k_i) / sqrt(dim), weights = softmax(scores),
//   context = sum_i weights_i * k_i.
struct AttentionCache {
  std::vector<double> weights;
};

// keys is row-major [len x dim]; context must hold dim values.
// Throws Error(dim_mismatch) when len == 0.
void attend(const double* query, const double* keys, std::size_t len,
            std::size_t dim, double* context, AttentionCache& cache);

// Adds gradients w.r.t. the query and keys.
void attend_backward(const double* query, const double* keys, std::size_t len,
                     std::size_t dim, const AttentionCache& cache,
                     const double* d_context, double* d_query_add,
                     double* d_keys_add);

}  // namespace postedit::nn
