#include "dyadic/operators.hpp"

#include "dyadic/errors.hpp"

#include <cmath>
#include <string>

namespace dyadic {

namespace {

// |I^j_k|^{-s} = 2^{js}.
double symbol(std::int64_t level, double s) { return std::exp2(static_cast<double>(level) * s); }

}  // namespace

FractionalOrder::FractionalOrder(double s) : s_(s) {
  if (!(s > 0.0 && s < 1.0)) throw InvalidOrder("fractional order must lie in (0, 1), got " + std::to_string(s));
}

const HaarExpansion& GradientField::component(std::uint64_t i) const {
  static const HaarExpansion zero;
  const auto it = components.find(i);
  return it == components.end() ? zero : it->second;
}

double GradientField::norm2_squared() const {
  double sum = 0.0;
  for (const auto& [i, f] : components) sum += f.norm2_squared();
  return sum;
}

HaarExpansion frac_laplacian(const HaarExpansion& f, FractionalOrder s) {
  HaarExpansion out;
  for (const auto& [key, c] : f) out.set(key, symbol(key.level, s.value()) * c);
  return out;
}

HaarExpansion inv_frac_laplacian(const HaarExpansion& f, FractionalOrder s) {
  HaarExpansion out;
  for (const auto& [key, c] : f) out.set(key, symbol(-key.level, s.value()) * c);
  return out;
}

HaarExpansion apply_multiplier(const HaarExpansion& f, const Multiplier& m) {
  HaarExpansion out;
  for (const auto& [key, c] : f) out.set(key, m(key) * c);
  return out;
}

HaarExpansion project(const HaarExpansion& f, std::uint64_t i) {
  HaarExpansion out;
  for (const auto& [key, c] : f) {
    if (key.position == i) out.set(key, c);
  }
  return out;
}

HaarExpansion directional(const HaarExpansion& f, FractionalOrder s, const Multiplier& m) {
  HaarExpansion out;
  for (const auto& [key, c] : f) out.set(key, m(key) * (symbol(key.level, s.value()) * c));
  return out;
}

HaarExpansion partial(const HaarExpansion& f, FractionalOrder s, std::uint64_t i) {
  HaarExpansion out;
  for (const auto& [key, c] : f) {
    if (key.position == i) out.set(key, symbol(key.level, s.value()) * c);
  }
  return out;
}

GradientField split_positions(const HaarExpansion& g) {
  GradientField out;
  for (const auto& [key, c] : g) out.components[key.position].set(key, c);
  return out;
}

GradientField gradient(const HaarExpansion& f, FractionalOrder s) { return split_positions(frac_laplacian(f, s)); }

HaarExpansion dilate_expansion(const HaarExpansion& f, std::int64_t power) {
  HaarExpansion out;
  for (const auto& [key, c] : f) out.set({key.level + power, key.position}, c);
  return out;
}

}  // namespace dyadic
