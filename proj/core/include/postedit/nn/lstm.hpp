#pragma once

#include <string>
#include <vector>

#include "postedit/nn/tensor.hpp"
#include "postedit/rng.hpp"

namespace postedit::nn {

// One direction of one recurrent layer. Gate order in the stacked weight
// matrices is input, forget, cell, output; the forget-gate bias starts at +1.
struct LstmCell {
  std::string prefix;   // parameter names: prefix + ".w_x" / ".w_h" / ".b"
  std::size_t in_dim = 0;
  std::size_t hidden = 0;

  void init(TensorMap& params, Rng& rng) const;

  struct Cache {
    std::size_t len = 0;
    std::vector<double> gates;   // L x 4H, post activation (i, f, g, o)
    std::vector<double> cells;   // L x H
    std::vector<double> tanh_c;  // L x H
    std::vector<double> hs;      // L x H
  };

  // xs is row-major [L x in_dim].
  void forward(const TensorMap& params, const double* xs, std::size_t len,
               Cache& cache) const;

  // dhs is [L x H] (gradient w.r.t. every h_t); adds input gradients into
  // dxs ([L x in_dim], pre-sized) and parameter gradients into grads.
  void backward(const TensorMap& params, TensorMap& grads, const double* xs,
                const Cache& cache, const std::vector<double>& dhs,
                double* dxs) const;
};

// Multi-layer bidirectional encoder over embedded inputs. Layer k >= 1
// consumes the concatenated bidirectional outputs of layer k-1. The final
// states are the top layer's forward state at the last position and
// backward state at the first position.
struct BiLstmEncoder {
  std::string prefix;
  std::size_t in_dim = 0;
  std::size_t hidden = 0;   // per direction
  std::size_t layers = 0;

  void init(TensorMap& params, Rng& rng) const;

  struct Cache {
    std::size_t len = 0;
    std::vector<std::vector<double>> layer_inputs;  // per layer, L x layer_in
    std::vector<LstmCell::Cache> fwd;               // per layer
    std::vector<LstmCell::Cache> bwd;               // per layer (reversed order)
    std::vector<double> outputs;                    // L x 2H, top layer
  };

  std::size_t out_dim() const { return 2 * hidden; }

  // xs is [L x in_dim]; fills cache.outputs and returns pointers to the
  // final forward/backward states inside the cache.
  void forward(const TensorMap& params, const double* xs, std::size_t len,
               Cache& cache) const;

  const double* final_fwd(const Cache& cache) const;
  const double* final_bwd(const Cache& cache) const;

  // d_outputs is [L x 2H]; d_final_fwd / d_final_bwd may be null. Adds the
  // gradient w.r.t. xs into dxs ([L x in_dim], pre-sized).
  void backward(const TensorMap& params, TensorMap& grads,
                const Cache& cache, const std::vector<double>& d_outputs,
                const double* d_final_fwd, const double* d_final_bwd,
                double* dxs) const;

 private:
  LstmCell cell(std::size_t layer, bool forward_dir) const;
  std::size_t layer_in_dim(std::size_t layer) const {
    return layer == 0 ? in_dim : 2 * hidden;
  }
};

}  // namespace postedit::nn
