#pragma once

// SplitMix64 stream and the seeded generators used by the sweeps and property
// batteries. Each trial owns a stream derived from (seed, trial index) so the
// draws never depend on scheduling.

#include "dyadic/core.hpp"
#include "dyadic/haar.hpp"

#include <cstdint>

namespace dyadic {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  /// Stream of trial `index` under `seed`.
  static SplitMix64 for_trial(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// next() % bound; bound > 0.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

 private:
  std::uint64_t state_;
};

/// Shape of a random element of S(H).
struct ExpansionShape {
  int coeff_count = 6;
  std::int64_t level_lo = -2;
  std::int64_t level_hi = 3;
  std::uint64_t position_max = 8;  // positions drawn from [0, position_max)
};

/// coeff_count keys drawn uniformly, coefficients uniform on [-1, 1);
/// repeated keys accumulate.
HaarExpansion random_expansion(SplitMix64& rng, const ExpansionShape& shape);

/// Shape of a random dyadic point: numerator uniform below 2^numerator_bits,
/// scale uniform in [0, max_scale].
struct PointShape {
  unsigned numerator_bits = 24;
  unsigned max_scale = 20;
};

DyadicPoint random_point(SplitMix64& rng, const PointShape& shape);
/// Uniform point of `cell` with `extra_bits` more binary digits than its level.
DyadicPoint random_point_in(SplitMix64& rng, const DyadicInterval& cell, unsigned extra_bits);

}  // namespace dyadic
