#pragma once

#include <cstdint>
#include <random>

namespace qpc {

// Deterministic random source. Every stochastic operation in the simulator
// takes one of these explicitly; two sources built from the same seed emit
// the same stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  // Uniform integer in the closed range [lo, hi].
  int uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }

  // Uniform real in [0, 1).
  double uniform_real() {
    return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
  }

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// Pure seed derivation: the result depends only on (master, index).
// SplitMix64 finalizer over the combined words.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace qpc
