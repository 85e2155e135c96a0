#pragma once

#include <cstdint>
#include <random>

namespace postedit {

// Deterministic random source. std::mt19937_64 output is pinned by the
// standard; the distributions here are hand-rolled because the standard
// library's are implementation-defined, and reports must reproduce
// byte-identically.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, n) without modulo bias.
  std::uint64_t uniform_u64(std::uint64_t n);

  // Uniform in [lo, hi] inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  // Uniform in [0, 1).
  double uniform();

  // Standard normal via Box-Muller.
  double normal();
  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  bool bernoulli(double p) { return uniform() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(uniform_u64(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Mixes a base seed with a stream index (splitmix64 finalizer), used to give
// every session/worker its own independent stream.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace postedit
