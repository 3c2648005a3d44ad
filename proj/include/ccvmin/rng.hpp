#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "ccvmin/types.hpp"

namespace ccvmin {

/// SplitMix64 (Steele, Lea, Flood): seed expander and stream deriver.
struct SplitMix64 {
  std::uint64_t state;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
};

/// xoshiro256** (Blackman, Vigna), seeded through SplitMix64. Platform-stable
/// sampling: every distribution below is implemented here, so identical seeds
/// give identical streams everywhere.
class Xoshiro256StarStar {
 public:
  explicit Xoshiro256StarStar(std::uint64_t seed) {
    SplitMix64 sm{seed};
    for (auto& word : state_) word = sm.next();
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Independent child stream derived from this generator's output.
  Xoshiro256StarStar split() { return Xoshiro256StarStar(next_u64()); }

  /// Uniform on (0, 1], 53-bit resolution.
  double uniform01() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

  /// Standard normal via Box-Muller; two uniforms per draw.
  double normal() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  /// Uniform integer in [0, bound).
  int uniform_int(int bound) { return static_cast<int>(next_u64() % static_cast<std::uint64_t>(bound)); }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t state_[4];
};

using Rng = Xoshiro256StarStar;

/// Uniform random permutation by Fisher-Yates.
inline Permutation random_permutation(int m, Rng& rng) {
  std::vector<int> map(static_cast<std::size_t>(m));
  std::iota(map.begin(), map.end(), 0);
  for (int i = m - 1; i > 0; --i)
    std::swap(map[static_cast<std::size_t>(i)], map[static_cast<std::size_t>(rng.uniform_int(i + 1))]);
  return Permutation(std::move(map));
}

}  // namespace ccvmin
