#include "dyadic/multiplier.hpp"

#include "dyadic/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace dyadic {

Multiplier::Multiplier(std::map<std::uint64_t, double> base, double default_value)
    : base_(std::move(base)), default_(default_value) {
  for (const auto& [k, v] : base_) {
    if (!std::isfinite(v)) throw Error("multiplier values must be finite");
  }
  if (!std::isfinite(default_)) throw Error("multiplier default must be finite");
}

double Multiplier::at_position(std::uint64_t position) const {
  const auto it = base_.find(position);
  return it == base_.end() ? default_ : it->second;
}

double Multiplier::bound() const {
  double out = std::abs(default_);
  for (const auto& [k, v] : base_) out = std::max(out, std::abs(v));
  return out;
}

Multiplier operator*(const Multiplier& a, const Multiplier& b) {
  std::map<std::uint64_t, double> base;
  for (const auto& [k, v] : a.base_) base[k] = v * b.at_position(k);
  for (const auto& [k, v] : b.base_) base[k] = a.at_position(k) * v;
  return Multiplier(std::move(base), a.default_ * b.default_);
}

double multiplier_eval(const Multiplier& m, const DyadicInterval& interval) { return m(interval); }

Multiplier canonical_partial(std::uint64_t i) { return Multiplier({{i, 1.0}}, 0.0); }

std::vector<std::uint64_t> ancestor_positions(std::uint64_t position) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = position; p != 0; p >>= 1) out.push_back(p);
  out.push_back(0);
  return out;
}

Dyadic omega_at(const Multiplier& m, const DyadicInterval& common) {
  const auto value = [&](std::uint64_t position) { return Dyadic::from_double(m.at_position(position)); };
  const std::uint64_t k0 = common.position;
  Dyadic omega = -value(k0);
  // Generations 1 .. L-1 have nonzero positions; from L on all positions are 0
  // and sum_{l >= L} 2^-l = 2^-(L-1).
  const auto first_zero = static_cast<std::int64_t>(std::bit_width(k0));
  for (std::int64_t l = 1; l < first_zero; ++l) omega += value(k0 >> l).ldexp(-l);
  omega += value(0).ldexp(-(std::max<std::int64_t>(first_zero, 1) - 1));
  return omega;
}

Dyadic omega_eval(const Multiplier& m, const DyadicPoint& x, const DyadicPoint& y) {
  return omega_at(m, min_common_interval(x, y));
}

double omega_partial(std::uint64_t i, std::uint64_t position) {
  if (position == 0) return 0.0;  // -1 + sum_{l >= 1} 2^-l
  if (i == position) return -1.0;
  if (i == 0) return std::ldexp(1.0, -(std::bit_width(position) - 1));
  const int gap = std::bit_width(position) - std::bit_width(i);
  if (gap <= 0 || (position >> gap) != i) return 0.0;
  return std::ldexp(1.0, -gap);
}

Dyadic kernel_component(std::uint64_t i, const DyadicPoint& x, const DyadicPoint& y) {
  const auto common = min_common_interval(x, y);
  return omega_at(canonical_partial(i), common).ldexp(common.level);
}

Dyadic KernelVector::component(std::uint64_t i) const {
  const auto it = entries.find(i);
  return it == entries.end() ? Dyadic{} : it->second;
}

Dyadic KernelVector::norm_squared() const {
  Dyadic sum;
  for (const auto& [i, v] : entries) sum += v * v;
  return sum;
}

double KernelVector::norm() const { return std::sqrt(norm_squared().to_double()); }

KernelVector kernel_vector_at(const DyadicInterval& common) {
  KernelVector out;
  out.delta_xy = common.measure();
  for (const std::uint64_t i : ancestor_positions(common.position)) {
    out.entries[i] = omega_at(canonical_partial(i), common).ldexp(common.level);
  }
  return out;
}

KernelVector kernel_vector(const DyadicPoint& x, const DyadicPoint& y) {
  return kernel_vector_at(min_common_interval(x, y));
}

}  // namespace dyadic
