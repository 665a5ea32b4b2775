#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace stitkit {

// Subsets of a state space are bitmasks over the state index order.
// Everything in this library is desk-scale; 64 states is the hard cap.
using Subset = std::uint64_t;

inline constexpr int kMaxStates = 64;

constexpr Subset subset_full(int n) {
  return n >= 64 ? ~Subset{0} : ((Subset{1} << n) - 1);
}

constexpr Subset subset_single(int i) { return Subset{1} << i; }

constexpr bool subset_contains(Subset s, int i) { return (s >> i) & 1; }

// a is a subset of b
constexpr bool subset_leq(Subset a, Subset b) { return (a & ~b) == 0; }

constexpr bool subset_lt(Subset a, Subset b) { return a != b && subset_leq(a, b); }

inline int subset_size(Subset s) { return std::popcount(s); }

inline std::vector<int> subset_members(Subset s) {
  std::vector<int> out;
  while (s) {
    int i = std::countr_zero(s);
    out.push_back(i);
    s &= s - 1;
  }
  return out;
}

// Minimal elements of a family of subsets under inclusion.
inline std::vector<Subset> minimal_elements(const std::vector<Subset>& family) {
  std::vector<Subset> out;
  for (Subset x : family) {
    bool minimal = true;
    for (Subset y : family) {
      if (subset_lt(y, x)) {
        minimal = false;
        break;
      }
    }
    if (minimal) {
      bool seen = false;
      for (Subset z : out) seen = seen || z == x;
      if (!seen) out.push_back(x);
    }
  }
  return out;
}

}  // namespace stitkit
