#include "postedit/nn/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>

#include "postedit/error.hpp"

namespace postedit::nn {

namespace {

constexpr char kMagic[8] = {'P', 'E', 'C', 'K', 'P', 'T', '0', '1'};

void put_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xFF),
                        static_cast<unsigned char>((v >> 8) & 0xFF),
                        static_cast<unsigned char>((v >> 16) & 0xFF),
                        static_cast<unsigned char>((v >> 24) & 0xFF)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4))
    throw Error(Errc::malformed_record, "truncated checkpoint");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_f32(std::ostream& out, float v) {
  std::uint32_t bits;
  std::memcpy(&bits, &v, 4);
  put_u32(out, bits);
}

float get_f32(std::istream& in) {
  const std::uint32_t bits = get_u32(in);
  float v;
  std::memcpy(&v, &bits, 4);
  return v;
}

}  // namespace

void save_checkpoint(const std::string& path, const TensorMap& params) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io_error, "cannot write " + path);
  out.write(kMagic, sizeof(kMagic));
  put_u32(out, static_cast<std::uint32_t>(params.count()));
  for (const auto& [name, t] : params) {
    put_u32(out, static_cast<std::uint32_t>(name.size()));
    out.write(name.data(), static_cast<std::streamsize>(name.size()));
    put_u32(out, static_cast<std::uint32_t>(t.shape.size()));
    for (std::size_t d : t.shape) put_u32(out, static_cast<std::uint32_t>(d));
    for (double v : t.data) put_f32(out, static_cast<float>(v));
  }
  if (!out) throw Error(Errc::io_error, "write failed for " + path);
}

void load_checkpoint(const std::string& path, TensorMap& params) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot open " + path);
  char magic[8];
  if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, 8) != 0)
    throw Error(Errc::malformed_record, "not a checkpoint file: " + path);

  const std::uint32_t count = get_u32(in);
  if (count != params.count())
    throw Error(Errc::checkpoint_mismatch,
                "checkpoint has " + std::to_string(count) + " tensors, model has " +
                    std::to_string(params.count()));

  for (std::uint32_t k = 0; k < count; ++k) {
    const std::uint32_t name_len = get_u32(in);
    std::string name(name_len, '\0');
    if (!in.read(name.data(), name_len))
      throw Error(Errc::malformed_record, "truncated checkpoint");
    if (!params.contains(name))
      throw Error(Errc::checkpoint_mismatch, "unexpected tensor '" + name + "'");
    Tensor& t = params.at(name);

    const std::uint32_t rank = get_u32(in);
    std::vector<std::size_t> shape(rank);
    for (auto& d : shape) d = get_u32(in);
    if (shape != t.shape)
      throw Error(Errc::checkpoint_mismatch, "shape mismatch for '" + name + "'");
    for (double& v : t.data) v = static_cast<double>(get_f32(in));
  }
}

}  // namespace postedit::nn
