#pragma once

#include <cstdint>

#include "postedit/nn/tensor.hpp"

namespace postedit::nn {

// Adam with bias-corrected moment estimates.
class Adam {
 public:
  explicit Adam(double lr, double beta1 = 0.9, double beta2 = 0.999,
                double eps = 1e-8)
      : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {}

  void step(TensorMap& params, const TensorMap& grads);

  std::int64_t steps() const { return t_; }

 private:
  double lr_, beta1_, beta2_, eps_;
  std::int64_t t_ = 0;
  TensorMap m_, v_;
  bool initialized_ = false;
};

}  // namespace postedit::nn
