#pragma once

// Dyadic points and intervals of the half-line, the ultrametric delta and the
// butterfly / level-set classification of off-diagonal pairs.
//
// Everything here is integer arithmetic. Intervals are half-open [a, b), so a
// boundary point belongs to the right-hand cell.

#include "dyadic/dyadic_rational.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace dyadic {

/// Exact point numerator * 2^-scale of [0, inf), kept in canonical form
/// (numerator odd or scale == 0).
class DyadicPoint {
 public:
  static constexpr unsigned kMaxScale = 62;

  DyadicPoint() = default;
  /// Throws OverflowError if scale > kMaxScale after canonicalisation.
  DyadicPoint(std::uint64_t numerator, unsigned scale);

  /// "n/2^q" or a plain integer "n".
  static DyadicPoint parse(std::string_view text);

  std::uint64_t numerator() const { return numerator_; }
  unsigned scale() const { return scale_; }

  Dyadic value() const { return Dyadic(Dyadic::Int(numerator_), -static_cast<std::int64_t>(scale_)); }
  double to_double() const;
  std::string str() const;

  /// 2x and x/2, both exact.
  DyadicPoint doubled() const;
  DyadicPoint halved() const;

  friend bool operator==(const DyadicPoint&, const DyadicPoint&) = default;
  friend std::strong_ordering operator<=>(const DyadicPoint& a, const DyadicPoint& b);

 private:
  std::uint64_t numerator_ = 0;
  unsigned scale_ = 0;
};

/// I^j_k = [k 2^-j, (k+1) 2^-j).
struct DyadicInterval {
  std::int64_t level = 0;
  std::uint64_t position = 0;

  Dyadic measure() const { return Dyadic::pow2(-level); }
  double measure_double() const;
  DyadicPoint left() const;
  bool contains(const DyadicPoint& x) const;
  /// Children at level + 1; left_half() holds the left endpoint.
  DyadicInterval left_half() const;
  DyadicInterval right_half() const;
  bool contains(const DyadicInterval& other) const;

  friend auto operator<=>(const DyadicInterval&, const DyadicInterval&) = default;
};

/// Label of an off-diagonal pair: Gamma_{class_index} and Lambda_{level_index}.
struct ButterflyClass {
  std::uint64_t class_index = 0;
  std::int64_t level_index = 0;

  friend bool operator==(const ButterflyClass&, const ButterflyClass&) = default;
};

/// The unique level-j interval containing x.
DyadicInterval cell_at(const DyadicPoint& x, std::int64_t level);

/// l-th ancestor: level j - l, position floor(k / 2^l). Requires l >= 1.
DyadicInterval ancestor(const DyadicInterval& interval, std::int64_t generations);

/// 2^l I: same position, level j - l. A bijection of the dyadic family.
DyadicInterval dilate(const DyadicInterval& interval, std::int64_t power);

/// Smallest dyadic interval holding both points; they sit in different halves.
/// Throws EqualPoints when x == y.
DyadicInterval min_common_interval(const DyadicPoint& x, const DyadicPoint& y);

/// delta(x, y) = |I(x, y)|, with delta(x, x) = 0.
Dyadic delta(const DyadicPoint& x, const DyadicPoint& y);

ButterflyClass classify(const DyadicPoint& x, const DyadicPoint& y);

/// Smallest common interval of two distinct cells of the same level.
DyadicInterval min_common_interval(std::int64_t level, std::uint64_t cell_a, std::uint64_t cell_b);

}  // namespace dyadic
