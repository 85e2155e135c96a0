#include "postedit/nn/attention.hpp"

#include <algorithm>
#include <cmath>

#include "postedit/error.hpp"

namespace postedit::nn {

void attend(const double* query, const double* keys, std::size_t len,
            std::size_t dim, double* context, AttentionCache& cache) {
  if (len == 0) throw Error(Errc::dim_mismatch, "attention over zero keys");
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));

  cache.weights.resize(len);
  double max_score = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < len; ++i) {
    cache.weights[i] = dot(query, keys + i * dim, dim) * scale;
    max_score = std::max(max_score, cache.weights[i]);
  }
  double z = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    cache.weights[i] = std::exp(cache.weights[i] - max_score);
    z += cache.weights[i];
  }
  for (std::size_t i = 0; i < len; ++i) cache.weights[i] /= z;

  std::fill(context, context + dim, 0.0);
  for (std::size_t i = 0; i < len; ++i)
    axpy(cache.weights[i], keys + i * dim, context, dim);
}

void attend_backward(const double* query, const double* keys, std::size_t len,
                     std::size_t dim, const AttentionCache& cache,
                     const double* d_context, double* d_query_add,
                     double* d_keys_add) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  const auto& w = cache.weights;

  // d w_i from the weighted sum, plus the direct value path into the keys.
  std::vector<double> dw(len);
  for (std::size_t i = 0; i < len; ++i) {
    dw[i] = dot(d_context, keys + i * dim, dim);
    axpy(w[i], d_context, d_keys_add + i * dim, dim);
  }

  // softmax jacobian: ds_i = w_i (dw_i - sum_j w_j dw_j)
  double mix = 0.0;
  for (std::size_t i = 0; i < len; ++i) mix += w[i] * dw[i];
  for (std::size_t i = 0; i < len; ++i) {
    const double ds = w[i] * (dw[i] - mix) * scale;
    axpy(ds, keys + i * dim, d_query_add, dim);
    axpy(ds, query, d_keys_add + i * dim, dim);
  }
}

}  // namespace postedit::nn
