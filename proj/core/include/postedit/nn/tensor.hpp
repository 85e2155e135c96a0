#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "postedit/rng.hpp"

namespace postedit::nn {

// Dense row-major array of doubles. Double precision throughout so the
// finite-difference gradient checks are meaningful; checkpoints store
// 32-bit floats.
struct Tensor {
  std::vector<std::size_t> shape;
  std::vector<double> data;

  static Tensor zeros(std::vector<std::size_t> shape);

  std::size_t size() const { return data.size(); }
  std::size_t rows() const { return shape.empty() ? 0 : shape[0]; }
  std::size_t cols() const { return shape.size() < 2 ? 1 : shape[1]; }

  double* row(std::size_t r) { return data.data() + r * cols(); }
  const double* row(std::size_t r) const { return data.data() + r * cols(); }

  void fill(double v);
  bool same_shape(const Tensor& other) const { return shape == other.shape; }
};

// Named parameters or gradients. std::map keys keep iteration order (and
// therefore optimizer updates and checkpoints) deterministic.
class TensorMap {
 public:
  Tensor& create(const std::string& name, std::vector<std::size_t> shape);
  Tensor& at(const std::string& name);
  const Tensor& at(const std::string& name) const;
  bool contains(const std::string& name) const { return tensors_.count(name) > 0; }

  // A zero-filled map with the same names and shapes.
  TensorMap like() const;

  void zero();
  void scale(double factor);
  std::size_t total_size() const;

  auto begin() { return tensors_.begin(); }
  auto end() { return tensors_.end(); }
  auto begin() const { return tensors_.begin(); }
  auto end() const { return tensors_.end(); }
  std::size_t count() const { return tensors_.size(); }

 private:
  std::map<std::string, Tensor> tensors_;
};

// Glorot-style uniform initialization over fan_in + fan_out.
void init_uniform_fan(Tensor& t, std::size_t fan_in, std::size_t fan_out, Rng& rng);

// ---- small dense kernels ----------------------------------------------

// y (+)= W x, W row-major [rows x cols]
void gemv(const Tensor& w, const double* x, double* y, bool accumulate);
// dx += W^T dy
void gemv_transposed_add(const Tensor& w, const double* dy, double* dx);
// dW += dy (outer) x
void outer_add(Tensor& dw, const double* dy, const double* x);

double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);

}  // namespace postedit::nn
