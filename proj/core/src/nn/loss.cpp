#include "postedit/nn/loss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "postedit/error.hpp"

namespace postedit::nn {

std::vector<double> softmax(const std::vector<double>& logits) {
  std::vector<double> p(logits.size());
  const double m = *std::max_element(logits.begin(), logits.end());
  double z = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    p[i] = std::exp(logits[i] - m);
    z += p[i];
  }
  for (double& v : p) v /= z;
  return p;
}

double softmax_cross_entropy(const std::vector<double>& logits, std::size_t label,
                             std::vector<double>* dlogits) {
  for (double v : logits)
    if (!std::isfinite(v))
      throw Error(Errc::non_finite_loss, "non-finite logit");
  if (label >= logits.size())
    throw Error(Errc::id_out_of_range, "label out of range");

  const double m = *std::max_element(logits.begin(), logits.end());
  double z = 0.0;
  for (double v : logits) z += std::exp(v - m);
  const double log_z = std::log(z) + m;
  const double loss = log_z - logits[label];

  if (dlogits) {
    dlogits->resize(logits.size());
    for (std::size_t i = 0; i < logits.size(); ++i)
      (*dlogits)[i] = std::exp(logits[i] - log_z);
    (*dlogits)[label] -= 1.0;
  }
  return loss;
}

double squared_error(double pred, double target, double* dpred) {
  if (!std::isfinite(pred))
    throw Error(Errc::non_finite_loss, "non-finite prediction");
  const double diff = pred - target;
  if (dpred) *dpred = 2.0 * diff;
  return diff * diff;
}

}  // namespace postedit::nn
