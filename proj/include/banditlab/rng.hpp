#pragma once

#include <cstdint>
#include <random>

namespace banditlab {

// splitmix64 finalizer; decorrelates nearby seeds before they reach the
// mt19937_64 state initializer.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Deterministic uniform stream.  All sampling in the repository goes through
// uniform_open() + a quantile function so runs replay bit-identically.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(mix_seed(seed)) {}

  // Uniform deviate strictly inside (0,1): quantile functions may pole at 0/1.
  double uniform_open() {
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Uniform draw over {0, ..., k-1}; used only for tie-breaking.
  std::size_t uniform_index(std::size_t k) {
    auto i = static_cast<std::size_t>(uniform_open() * static_cast<double>(k));
    return i < k ? i : k - 1;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace banditlab
