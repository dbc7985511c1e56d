#pragma once

// Degree-zero homogeneous Haar multipliers and the l2-valued kernel
//
//   K_(i)(x, y) = sum_j h^j_i(x) h^j_i(y) = Omega_{m_i}(x, y) / delta(x, y),
//   Omega_m(x, y) = -m(I(x,y)) + sum_{l >= 1} 2^-l m(I^(l)(x,y)).
//
// Ancestor positions of I(x, y) reach 0 after finitely many generations, after
// which every term carries m(I^0_0); that tail is summed in closed form, so
// every value below is exact.

#include "dyadic/core.hpp"
#include "dyadic/dyadic_rational.hpp"

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace dyadic {

/// m(I^j_k) = base[k] (or the default value), independent of the level j.
class Multiplier {
 public:
  Multiplier() = default;
  explicit Multiplier(std::map<std::uint64_t, double> base, double default_value = 0.0);

  static Multiplier constant(double value) { return Multiplier({}, value); }

  double at_position(std::uint64_t position) const;
  double operator()(const DyadicInterval& interval) const { return at_position(interval.position); }

  /// sup |m|.
  double bound() const;
  const std::map<std::uint64_t, double>& base() const { return base_; }
  double default_value() const { return default_; }

  /// Pointwise product, the symbol of T_m o T_m'.
  friend Multiplier operator*(const Multiplier& a, const Multiplier& b);
  friend bool operator==(const Multiplier&, const Multiplier&) = default;

 private:
  std::map<std::uint64_t, double> base_;
  double default_ = 0.0;
};

double multiplier_eval(const Multiplier& m, const DyadicInterval& interval);

/// m_i with m_i([k, k+1)) = [i == k].
Multiplier canonical_partial(std::uint64_t i);

/// Omega_m on the butterfly B(common); exact for every finite double base value.
Dyadic omega_at(const Multiplier& m, const DyadicInterval& common);
/// Throws EqualPoints when x == y.
Dyadic omega_eval(const Multiplier& m, const DyadicPoint& x, const DyadicPoint& y);

/// K_(i)(x, y). Throws EqualPoints when x == y.
Dyadic kernel_component(std::uint64_t i, const DyadicPoint& x, const DyadicPoint& y);

/// Omega_{m_i} on butterflies of a position-k interval, in binary64.
/// Every nonzero value is a single power of two (-1, 2^-l), so this is exact.
double omega_partial(std::uint64_t i, std::uint64_t position);

/// One column K(x, y) of the vector kernel, stored on the ancestor positions
/// {k0, k0/2, ..., 0} of I(x, y); every other component is zero.
struct KernelVector {
  std::map<std::uint64_t, Dyadic> entries;
  Dyadic delta_xy;

  Dyadic component(std::uint64_t i) const;
  Dyadic norm_squared() const;
  double norm() const;
  friend bool operator==(const KernelVector&, const KernelVector&) = default;
};

KernelVector kernel_vector_at(const DyadicInterval& common);
KernelVector kernel_vector(const DyadicPoint& x, const DyadicPoint& y);

/// Ancestor positions {k, k/2, ..., 0} of an interval at position k, finest first.
std::vector<std::uint64_t> ancestor_positions(std::uint64_t position);

}  // namespace dyadic
