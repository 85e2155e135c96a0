#pragma once

#include <string>

#include "postedit/nn/tensor.hpp"

namespace postedit::nn {

// Binary checkpoint: versioned magic, tensor count, then per tensor the
// name, shape, and raw little-endian 32-bit floats.
void save_checkpoint(const std::string& path, const TensorMap& params);

// Loads into an existing map; names and shapes must match exactly.
// Throws Error(checkpoint_mismatch | malformed_record | io_error).
void load_checkpoint(const std::string& path, TensorMap& params);

}  // namespace postedit::nn
