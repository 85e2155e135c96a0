#include "postedit/nn/lstm.hpp"

#include <cmath>

#include "postedit/error.hpp"

namespace postedit::nn {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

void LstmCell::init(TensorMap& params, Rng& rng) const {
  Tensor& wx = params.create(prefix + ".w_x", {4 * hidden, in_dim});
  init_uniform_fan(wx, in_dim, hidden, rng);
  Tensor& wh = params.create(prefix + ".w_h", {4 * hidden, hidden});
  init_uniform_fan(wh, hidden, hidden, rng);
  Tensor& b = params.create(prefix + ".b", {4 * hidden});
  // forget-gate bias +1 keeps early training stable
  for (std::size_t i = hidden; i < 2 * hidden; ++i) b.data[i] = 1.0;
}

void LstmCell::forward(const TensorMap& params, const double* xs, std::size_t len,
                       Cache& cache) const {
  const Tensor& wx = params.at(prefix + ".w_x");
  const Tensor& wh = params.at(prefix + ".w_h");
  const Tensor& b = params.at(prefix + ".b");
  const std::size_t H = hidden;

  cache.len = len;
  cache.gates.assign(len * 4 * H, 0.0);
  cache.cells.assign(len * H, 0.0);
  cache.tanh_c.assign(len * H, 0.0);
  cache.hs.assign(len * H, 0.0);

  std::vector<double> pre(4 * H);
  const double* h_prev = nullptr;
  const double* c_prev = nullptr;
  for (std::size_t t = 0; t < len; ++t) {
    for (std::size_t i = 0; i < 4 * H; ++i) pre[i] = b.data[i];
    gemv(wx, xs + t * in_dim, pre.data(), true);
    if (h_prev) gemv(wh, h_prev, pre.data(), true);

    double* gates = cache.gates.data() + t * 4 * H;
    double* c = cache.cells.data() + t * H;
    double* tc = cache.tanh_c.data() + t * H;
    double* h = cache.hs.data() + t * H;
    for (std::size_t j = 0; j < H; ++j) {
      const double gi = sigmoid(pre[j]);
      const double gf = sigmoid(pre[H + j]);
      const double gg = std::tanh(pre[2 * H + j]);
      const double go = sigmoid(pre[3 * H + j]);
      gates[j] = gi;
      gates[H + j] = gf;
      gates[2 * H + j] = gg;
      gates[3 * H + j] = go;
      const double cp = c_prev ? c_prev[j] : 0.0;
      c[j] = gf * cp + gi * gg;
      tc[j] = std::tanh(c[j]);
      h[j] = go * tc[j];
    }
    h_prev = h;
    c_prev = c;
  }
}

void LstmCell::backward(const TensorMap& params, TensorMap& grads, const double* xs,
                        const Cache& cache, const std::vector<double>& dhs,
                        double* dxs) const {
  const Tensor& wx = params.at(prefix + ".w_x");
  const Tensor& wh = params.at(prefix + ".w_h");
  Tensor& dwx = grads.at(prefix + ".w_x");
  Tensor& dwh = grads.at(prefix + ".w_h");
  Tensor& db = grads.at(prefix + ".b");
  const std::size_t H = hidden;
  const std::size_t len = cache.len;

  std::vector<double> dh(H, 0.0), dc(H, 0.0), dpre(4 * H);
  for (std::size_t t = len; t-- > 0;) {
    const double* gates = cache.gates.data() + t * 4 * H;
    const double* tc = cache.tanh_c.data() + t * H;
    const double* c_prev = t > 0 ? cache.cells.data() + (t - 1) * H : nullptr;
    const double* h_prev = t > 0 ? cache.hs.data() + (t - 1) * H : nullptr;

    for (std::size_t j = 0; j < H; ++j) {
      const double gi = gates[j];
      const double gf = gates[H + j];
      const double gg = gates[2 * H + j];
      const double go = gates[3 * H + j];
      const double dht = dh[j] + dhs[t * H + j];
      const double dct = dc[j] + dht * go * (1.0 - tc[j] * tc[j]);
      const double cp = c_prev ? c_prev[j] : 0.0;

      dpre[j] = dct * gg * gi * (1.0 - gi);                 // input gate
      dpre[H + j] = dct * cp * gf * (1.0 - gf);             // forget gate
      dpre[2 * H + j] = dct * gi * (1.0 - gg * gg);         // cell candidate
      dpre[3 * H + j] = dht * tc[j] * go * (1.0 - go);      // output gate
      dc[j] = dct * gf;
    }

    axpy(1.0, dpre.data(), db.data.data(), 4 * H);
    outer_add(dwx, dpre.data(), xs + t * in_dim);
    gemv_transposed_add(wx, dpre.data(), dxs + t * in_dim);
    if (h_prev) {
      outer_add(dwh, dpre.data(), h_prev);
      std::fill(dh.begin(), dh.end(), 0.0);
      gemv_transposed_add(wh, dpre.data(), dh.data());
    }
  }
}

LstmCell BiLstmEncoder::cell(std::size_t layer, bool forward_dir) const {
  LstmCell c;
  c.prefix = prefix + ".l" + std::to_string(layer) + (forward_dir ? ".fwd" : ".bwd");
  c.in_dim = layer_in_dim(layer);
  c.hidden = hidden;
  return c;
}

void BiLstmEncoder::init(TensorMap& params, Rng& rng) const {
  for (std::size_t l = 0; l < layers; ++l) {
    cell(l, true).init(params, rng);
    cell(l, false).init(params, rng);
  }
}

void BiLstmEncoder::forward(const TensorMap& params, const double* xs,
                            std::size_t len, Cache& cache) const {
  if (len == 0) throw Error(Errc::empty_input, "cannot encode an empty sequence");
  cache.len = len;
  cache.layer_inputs.assign(layers, {});
  cache.fwd.assign(layers, {});
  cache.bwd.assign(layers, {});
  const std::size_t H = hidden;

  std::vector<double> reversed;
  for (std::size_t l = 0; l < layers; ++l) {
    const std::size_t in = layer_in_dim(l);
    auto& input = cache.layer_inputs[l];
    if (l == 0) {
      input.assign(xs, xs + len * in);
    } else {
      // concatenated bidirectional outputs of the previous layer
      input.assign(len * in, 0.0);
      const auto& f = cache.fwd[l - 1];
      const auto& b = cache.bwd[l - 1];
      for (std::size_t t = 0; t < len; ++t) {
        const double* fh = f.hs.data() + t * H;
        const double* bh = b.hs.data() + (len - 1 - t) * H;
        double* dst = input.data() + t * in;
        for (std::size_t j = 0; j < H; ++j) dst[j] = fh[j];
        for (std::size_t j = 0; j < H; ++j) dst[H + j] = bh[j];
      }
    }

    cell(l, true).forward(params, input.data(), len, cache.fwd[l]);

    reversed.assign(len * in, 0.0);
    for (std::size_t t = 0; t < len; ++t)
      for (std::size_t j = 0; j < in; ++j)
        reversed[t * in + j] = input[(len - 1 - t) * in + j];
    cell(l, false).forward(params, reversed.data(), len, cache.bwd[l]);
  }

  cache.outputs.assign(len * 2 * H, 0.0);
  const auto& ft = cache.fwd[layers - 1];
  const auto& bt = cache.bwd[layers - 1];
  for (std::size_t t = 0; t < len; ++t) {
    const double* fh = ft.hs.data() + t * H;
    const double* bh = bt.hs.data() + (len - 1 - t) * H;
    double* dst = cache.outputs.data() + t * 2 * H;
    for (std::size_t j = 0; j < H; ++j) dst[j] = fh[j];
    for (std::size_t j = 0; j < H; ++j) dst[H + j] = bh[j];
  }
}

const double* BiLstmEncoder::final_fwd(const Cache& cache) const {
  return cache.fwd[layers - 1].hs.data() + (cache.len - 1) * hidden;
}

const double* BiLstmEncoder::final_bwd(const Cache& cache) const {
  return cache.bwd[layers - 1].hs.data() + (cache.len - 1) * hidden;
}

void BiLstmEncoder::backward(const TensorMap& params, TensorMap& grads,
                             const Cache& cache, const std::vector<double>& d_outputs,
                             const double* d_final_fwd, const double* d_final_bwd,
                             double* dxs) const {
  const std::size_t len = cache.len;
  const std::size_t H = hidden;

  // Per-layer gradients of the direction-specific hidden states.
  std::vector<double> dh_fwd(len * H, 0.0), dh_bwd(len * H, 0.0);
  if (!d_outputs.empty()) {
    for (std::size_t t = 0; t < len; ++t) {
      const double* src = d_outputs.data() + t * 2 * H;
      axpy(1.0, src, dh_fwd.data() + t * H, H);
      axpy(1.0, src + H, dh_bwd.data() + (len - 1 - t) * H, H);
    }
  }
  if (d_final_fwd) axpy(1.0, d_final_fwd, dh_fwd.data() + (len - 1) * H, H);
  if (d_final_bwd) axpy(1.0, d_final_bwd, dh_bwd.data() + (len - 1) * H, H);

  std::vector<double> d_input, d_input_rev, reversed_input;
  for (std::size_t l = layers; l-- > 0;) {
    const std::size_t in = layer_in_dim(l);
    const auto& input = cache.layer_inputs[l];

    d_input.assign(len * in, 0.0);
    cell(l, true).backward(params, grads, input.data(), cache.fwd[l], dh_fwd,
                           d_input.data());

    reversed_input.assign(len * in, 0.0);
    for (std::size_t t = 0; t < len; ++t)
      for (std::size_t j = 0; j < in; ++j)
        reversed_input[t * in + j] = input[(len - 1 - t) * in + j];
    d_input_rev.assign(len * in, 0.0);
    cell(l, false).backward(params, grads, reversed_input.data(), cache.bwd[l],
                            dh_bwd, d_input_rev.data());
    for (std::size_t t = 0; t < len; ++t)
      axpy(1.0, d_input_rev.data() + (len - 1 - t) * in, d_input.data() + t * in, in);

    if (l == 0) {
      axpy(1.0, d_input.data(), dxs, len * in);
    } else {
      // split into the previous layer's direction gradients
      dh_fwd.assign(len * H, 0.0);
      dh_bwd.assign(len * H, 0.0);
      for (std::size_t t = 0; t < len; ++t) {
        const double* src = d_input.data() + t * 2 * H;
        axpy(1.0, src, dh_fwd.data() + t * H, H);
        axpy(1.0, src + H, dh_bwd.data() + (len - 1 - t) * H, H);
      }
    }
  }
}

}  // namespace postedit::nn
