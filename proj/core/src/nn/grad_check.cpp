#include "postedit/nn/grad_check.hpp"

#include <algorithm>
#include <cmath>

#include "postedit/rng.hpp"

namespace postedit::nn {

GradCheckResult grad_check(TensorMap& params, const std::function<double()>& loss,
                           const TensorMap& analytic, double eps,
                           std::size_t max_coords, std::uint64_t seed) {
  // Collect every coordinate, then subsample when the model is large.
  std::vector<std::pair<std::string, std::size_t>> coords;
  for (const auto& [name, t] : params)
    for (std::size_t i = 0; i < t.size(); ++i) coords.emplace_back(name, i);

  if (coords.size() > max_coords) {
    Rng rng(seed);
    rng.shuffle(coords);
    coords.resize(max_coords);
  }

  GradCheckResult result;
  for (const auto& [name, i] : coords) {
    Tensor& t = params.at(name);
    const double saved = t.data[i];
    t.data[i] = saved + eps;
    const double up = loss();
    t.data[i] = saved - eps;
    const double down = loss();
    t.data[i] = saved;

    const double numeric = (up - down) / (2.0 * eps);
    const double analytic_g = analytic.at(name).data[i];
    const double denom = std::max({std::fabs(numeric), std::fabs(analytic_g), 1e-8});
    const double rel = std::fabs(numeric - analytic_g) / denom;
    if (rel > result.max_rel_error) {
      result.max_rel_error = rel;
      result.worst_param = name;
      result.worst_index = i;
    }
    ++result.checked;
  }
  return result;
}

}  // namespace postedit::nn
