#include "postedit/nn/tensor.hpp"

#include <algorithm>
#include <cmath>

#include "postedit/error.hpp"

namespace postedit::nn {

Tensor Tensor::zeros(std::vector<std::size_t> shape) {
  Tensor t;
  std::size_t n = 1;
  for (std::size_t d : shape) n *= d;
  t.shape = std::move(shape);
  t.data.assign(n, 0.0);
  return t;
}

void Tensor::fill(double v) { std::fill(data.begin(), data.end(), v); }

Tensor& TensorMap::create(const std::string& name, std::vector<std::size_t> shape) {
  auto [it, inserted] = tensors_.emplace(name, Tensor::zeros(std::move(shape)));
  if (!inserted)
    throw Error(Errc::dim_mismatch, "duplicate parameter name '" + name + "'");
  return it->second;
}

Tensor& TensorMap::at(const std::string& name) {
  auto it = tensors_.find(name);
  if (it == tensors_.end())
    throw Error(Errc::dim_mismatch, "unknown parameter '" + name + "'");
  return it->second;
}

const Tensor& TensorMap::at(const std::string& name) const {
  auto it = tensors_.find(name);
  if (it == tensors_.end())
    throw Error(Errc::dim_mismatch, "unknown parameter '" + name + "'");
  return it->second;
}

TensorMap TensorMap::like() const {
  TensorMap out;
  for (const auto& [name, t] : tensors_) out.create(name, t.shape);
  return out;
}

void TensorMap::zero() {
  for (auto& [name, t] : tensors_) t.fill(0.0);
}

void TensorMap::scale(double factor) {
  for (auto& [name, t] : tensors_)
    for (double& v : t.data) v *= factor;
}

std::size_t TensorMap::total_size() const {
  std::size_t n = 0;
  for (const auto& [name, t] : tensors_) n += t.size();
  return n;
}

void init_uniform_fan(Tensor& t, std::size_t fan_in, std::size_t fan_out, Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  for (double& v : t.data) v = (2.0 * rng.uniform() - 1.0) * limit;
}

void gemv(const Tensor& w, const double* x, double* y, bool accumulate) {
  const std::size_t rows = w.rows(), cols = w.cols();
  const double* wd = w.data.data();
  for (std::size_t r = 0; r < rows; ++r) {
    const double* wr = wd + r * cols;
    double acc = 0.0;
    for (std::size_t c = 0; c < cols; ++c) acc += wr[c] * x[c];
    y[r] = accumulate ? y[r] + acc : acc;
  }
}

void gemv_transposed_add(const Tensor& w, const double* dy, double* dx) {
  const std::size_t rows = w.rows(), cols = w.cols();
  const double* wd = w.data.data();
  for (std::size_t r = 0; r < rows; ++r) {
    const double g = dy[r];
    if (g == 0.0) continue;
    const double* wr = wd + r * cols;
    for (std::size_t c = 0; c < cols; ++c) dx[c] += g * wr[c];
  }
}

void outer_add(Tensor& dw, const double* dy, const double* x) {
  const std::size_t rows = dw.rows(), cols = dw.cols();
  double* wd = dw.data.data();
  for (std::size_t r = 0; r < rows; ++r) {
    const double g = dy[r];
    if (g == 0.0) continue;
    double* wr = wd + r * cols;
    for (std::size_t c = 0; c < cols; ++c) wr[c] += g * x[c];
  }
}

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace postedit::nn
