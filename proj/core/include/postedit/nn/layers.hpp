#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "postedit/nn/tensor.hpp"
#include "postedit/rng.hpp"

namespace postedit::nn {

// Lookup table mapping symbol ids to dense rows.
struct Embedding {
  std::string name;
  std::size_t vocab = 0;
  std::size_t dim = 0;

  void init(TensorMap& params, Rng& rng) const;
  // out is row-major [ids.size() x dim]; throws Error(id_out_of_range).
  void forward(const TensorMap& params, const std::vector<std::uint32_t>& ids,
               std::vector<double>& out) const;
  void backward(TensorMap& grads, const std::vector<std::uint32_t>& ids,
                const std::vector<double>& dout) const;
};

// Affine layer y = Wx + b.
struct Linear {
  std::string prefix;
  std::size_t in = 0;
  std::size_t out = 0;

  void init(TensorMap& params, Rng& rng) const;
  void forward(const TensorMap& params, const double* x, double* y) const;
  // dx may be null when the input gradient is not needed.
  void backward(const TensorMap& params, TensorMap& grads, const double* x,
                const double* dy, double* dx_add) const;
};

// Elementwise max(0, x); backward gated on the forward output.
void relu(double* x, std::size_t n);
void relu_backward(const double* y, double* dy, std::size_t n);

// Inverted dropout: scales kept activations by 1/(1-rate) in training so
// evaluation is the identity.
struct Dropout {
  double rate = 0.0;
  // Fills mask with 0 or 1/(1-rate); identity when !train or rate == 0.
  void forward(double* x, std::size_t n, bool train, Rng& rng,
               std::vector<double>& mask) const;
  void backward(double* dy, std::size_t n, const std::vector<double>& mask) const;
};

}  // namespace postedit::nn
