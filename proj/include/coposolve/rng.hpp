#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace coposolve {

/// Mixes a base seed with a stream key; used to derive independent
/// sub-streams for parallel or per-cell work.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t key) {
  // splitmix64 finalizer over seed xor a spread-out key
  std::uint64_t z = seed ^ (key * 0x9e3779b97f4a7c15ULL);
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic pseudorandom stream. Identical seeds reproduce identical
/// draws bit-for-bit. Single-owner: callers needing parallel randomness
/// derive child streams via substream()/mix_seed, never share one stream.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), eng_(mix_seed(seed, 0)) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Unbiased integer in [0, n); n >= 1.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % n;
  }

  /// Standard normal via Box-Muller; consumes exactly two uniforms per draw.
  double normal() {
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  /// Standard exponential (rate 1).
  double exponential() { return -std::log(1.0 - uniform01()); }

  /// Chi distribution with one degree of freedom, drawn as |N(0,1)|.
  double chi1() { return std::fabs(normal()); }

  /// Independent child stream keyed by an index.
  RngStream substream(std::uint64_t key) const { return RngStream(mix_seed(seed_, key + 1)); }

private:
  std::uint64_t seed_;
  std::mt19937_64 eng_;
};

}  // namespace coposolve
