#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "postedit/nn/tensor.hpp"

namespace postedit::nn {

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::string worst_param;
  std::size_t worst_index = 0;
  std::size_t checked = 0;
};

// Central finite differences over every scalar parameter, or over a seeded
// random subsample of at least `max_coords` coordinates for larger models.
// Relative error per coordinate: |a - n| / max(|a|, |n|, 1e-8). The loss
// callable must be deterministic (evaluation-mode forward).
GradCheckResult grad_check(TensorMap& params,
                           const std::function<double()>& loss,
                           const TensorMap& analytic, double eps = 1e-5,
                           std::size_t max_coords = 200,
                           std::uint64_t seed = 17);

}  // namespace postedit::nn
