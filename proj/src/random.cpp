#include "dyadic/random.hpp"

#include <algorithm>

namespace dyadic {

SplitMix64 SplitMix64::for_trial(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mix(seed ^ ((index + 1) * 0x9E3779B97F4A7C15ULL));
  return SplitMix64(mix.next());
}

HaarExpansion random_expansion(SplitMix64& rng, const ExpansionShape& shape) {
  HaarExpansion out;
  for (int n = 0; n < shape.coeff_count; ++n) {
    const std::int64_t level = rng.between(shape.level_lo, shape.level_hi);
    const std::uint64_t position = rng.below(shape.position_max);
    out.add({level, position}, rng.uniform(-1.0, 1.0));
  }
  return out;
}

DyadicPoint random_point(SplitMix64& rng, const PointShape& shape) {
  const std::uint64_t mask = shape.numerator_bits >= 64 ? ~0ULL : ((1ULL << shape.numerator_bits) - 1);
  const auto scale = static_cast<unsigned>(rng.below(shape.max_scale + 1ULL));
  return {rng.next() & mask, scale};
}

DyadicPoint random_point_in(SplitMix64& rng, const DyadicInterval& cell, unsigned extra_bits) {
  // x = (k 2^e + r) 2^-(j + e), r < 2^e, with j + e kept >= 0.
  const std::int64_t scale = std::max<std::int64_t>(cell.level + extra_bits, 0);
  const std::int64_t e = scale - cell.level;
  const std::uint64_t offset = e >= 64 ? rng.next() : rng.below(1ULL << e);
  const std::uint64_t base = cell.position << e;
  return {base + offset, static_cast<unsigned>(scale)};
}

}  // namespace dyadic
