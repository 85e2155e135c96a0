#include "postedit/nn/layers.hpp"

#include "postedit/error.hpp"

namespace postedit::nn {

void Embedding::init(TensorMap& params, Rng& rng) const {
  Tensor& t = params.create(name, {vocab, dim});
  init_uniform_fan(t, vocab, dim, rng);
}

void Embedding::forward(const TensorMap& params, const std::vector<std::uint32_t>& ids,
                        std::vector<double>& out) const {
  const Tensor& table = params.at(name);
  out.resize(ids.size() * dim);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] >= vocab)
      throw Error(Errc::id_out_of_range, "embedding id " + std::to_string(ids[i]) +
                                             " >= " + std::to_string(vocab));
    const double* src = table.row(ids[i]);
    double* dst = out.data() + i * dim;
    for (std::size_t d = 0; d < dim; ++d) dst[d] = src[d];
  }
}

void Embedding::backward(TensorMap& grads, const std::vector<std::uint32_t>& ids,
                         const std::vector<double>& dout) const {
  Tensor& g = grads.at(name);
  for (std::size_t i = 0; i < ids.size(); ++i)
    axpy(1.0, dout.data() + i * dim, g.row(ids[i]), dim);
}

void Linear::init(TensorMap& params, Rng& rng) const {
  Tensor& w = params.create(prefix + ".w", {out, in});
  init_uniform_fan(w, in, out, rng);
  params.create(prefix + ".b", {out});
}

void Linear::forward(const TensorMap& params, const double* x, double* y) const {
  const Tensor& w = params.at(prefix + ".w");
  const Tensor& b = params.at(prefix + ".b");
  for (std::size_t r = 0; r < out; ++r) y[r] = b.data[r];
  gemv(w, x, y, /*accumulate=*/true);
}

void Linear::backward(const TensorMap& params, TensorMap& grads, const double* x,
                      const double* dy, double* dx_add) const {
  Tensor& dw = grads.at(prefix + ".w");
  Tensor& db = grads.at(prefix + ".b");
  outer_add(dw, dy, x);
  axpy(1.0, dy, db.data.data(), out);
  if (dx_add) gemv_transposed_add(params.at(prefix + ".w"), dy, dx_add);
}

void relu(double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (x[i] < 0.0) x[i] = 0.0;
}

void relu_backward(const double* y, double* dy, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (y[i] <= 0.0) dy[i] = 0.0;
}

void Dropout::forward(double* x, std::size_t n, bool train, Rng& rng,
                      std::vector<double>& mask) const {
  if (!train || rate <= 0.0) {
    mask.clear();
    return;
  }
  const double keep = 1.0 - rate;
  mask.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    mask[i] = rng.bernoulli(keep) ? 1.0 / keep : 0.0;
    x[i] *= mask[i];
  }
}

void Dropout::backward(double* dy, std::size_t n, const std::vector<double>& mask) const {
  if (mask.empty()) return;
  for (std::size_t i = 0; i < n; ++i) dy[i] *= mask[i];
}

}  // namespace postedit::nn
