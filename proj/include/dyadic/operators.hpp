#pragma once

// Haar-diagonal operators on S(H): the dyadic fractional Laplacian D^s, its
// inverse, multiplier operators T_m, projectors T_(i), directional and
// partial derivatives and the l2-valued gradient. They act on coefficients
// only; use synthesize() for pointwise values.

#include "dyadic/haar.hpp"
#include "dyadic/multiplier.hpp"

#include <cstdint>
#include <map>

namespace dyadic {

/// Order s of D^s, restricted to the open interval (0, 1).
class FractionalOrder {
 public:
  /// Throws InvalidOrder outside (0, 1).
  explicit FractionalOrder(double s);
  double value() const { return s_; }

 private:
  double s_;
};

/// (D^s_(i) f : i >= 0), stored on the finitely many active components.
/// Component i only carries keys at position i.
struct GradientField {
  std::map<std::uint64_t, HaarExpansion> components;

  const HaarExpansion& component(std::uint64_t i) const;
  double norm2_squared() const;
  friend bool operator==(const GradientField&, const GradientField&) = default;
};

HaarExpansion frac_laplacian(const HaarExpansion& f, FractionalOrder s);
HaarExpansion inv_frac_laplacian(const HaarExpansion& f, FractionalOrder s);
/// T_m.
HaarExpansion apply_multiplier(const HaarExpansion& f, const Multiplier& m);
/// T_(i).
HaarExpansion project(const HaarExpansion& f, std::uint64_t i);
/// D^s_m: coefficient on I^j_k times m(I^j_k) 2^{js}.
HaarExpansion directional(const HaarExpansion& f, FractionalOrder s, const Multiplier& m);
/// D^s_(i).
HaarExpansion partial(const HaarExpansion& f, FractionalOrder s, std::uint64_t i);
GradientField gradient(const HaarExpansion& f, FractionalOrder s);
/// T applied to an arbitrary expansion: the components T_(i) g.
GradientField split_positions(const HaarExpansion& g);

/// U^l: reindex (j, k) -> (j + l, k), i.e. g(x) -> 2^{l/2} g(2^l x).
HaarExpansion dilate_expansion(const HaarExpansion& f, std::int64_t power = 1);

}  // namespace dyadic
