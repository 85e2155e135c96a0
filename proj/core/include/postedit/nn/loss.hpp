#pragma once

#include <cstddef>
#include <vector>

namespace postedit::nn {

// Numerically stable softmax.
std::vector<double> softmax(const std::vector<double>& logits);

// -log p(label); writes dL/dlogits (= p - onehot) when dlogits != null.
// Throws Error(non_finite_loss) when a logit is not finite.
double softmax_cross_entropy(const std::vector<double>& logits, std::size_t label,
                             std::vector<double>* dlogits);

// Squared error (pred - target)^2; writes dL/dpred when requested.
double squared_error(double pred, double target, double* dpred);

}  // namespace postedit::nn
