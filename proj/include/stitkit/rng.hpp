#pragma once

#include <cstdint>
#include <random>

#include "stitkit/bits.hpp"

namespace stitkit {

// splitmix64; used to derive independent per-item seeds so that parallel
// sweeps produce the same stream layout as the serial reference.
constexpr std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Thin wrapper over mt19937_64. The engine sequence is pinned by the
// standard; std::uniform_int_distribution is not, so bounded draws are
// done by hand to keep output identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // uniform in [0, n); n > 0
  int below(int n) { return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n)); }

  // uniform in [lo, hi]
  int range(int lo, int hi) { return lo + below(hi - lo + 1); }

  bool coin() { return next_u64() & 1; }

  Subset subset(int n) { return next_u64() & subset_full(n); }

  Subset nonempty_subset(int n) {
    for (;;) {
      Subset s = subset(n);
      if (s) return s;
    }
  }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[below(static_cast<int>(v.size()))];
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
      std::swap(v[i], v[below(i + 1)]);
    }
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace stitkit
