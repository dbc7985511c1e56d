#pragma once

#include "dyadic/core.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace dyadic {

/// Finite Haar series sum c_I h_I, keyed by the supporting interval.
///
/// Coefficients with |c| < kZero are never stored, so an empty map is the
/// canonical zero.
class HaarExpansion {
 public:
  static constexpr double kZero = 1e-300;
  using Map = std::map<DyadicInterval, double>;

  HaarExpansion() = default;
  explicit HaarExpansion(const Map& coeffs);

  /// Single wavelet c * h^j_k.
  static HaarExpansion single(std::int64_t level, std::uint64_t position, double c = 1.0);

  double coeff(const DyadicInterval& key) const;
  void set(const DyadicInterval& key, double c);
  void add(const DyadicInterval& key, double c);

  const Map& coeffs() const { return coeffs_; }
  bool empty() const { return coeffs_.empty(); }
  std::size_t size() const { return coeffs_.size(); }
  auto begin() const { return coeffs_.begin(); }
  auto end() const { return coeffs_.end(); }

  std::int64_t min_level() const;
  std::int64_t max_level() const;
  /// ||f||_2^2 = sum c^2 by orthonormality.
  double norm2_squared() const;
  /// Smallest M with every support inside [0, 2^M).
  std::int64_t required_window() const;

  HaarExpansion scaled(double factor) const;
  friend HaarExpansion operator+(const HaarExpansion& a, const HaarExpansion& b);
  friend HaarExpansion operator-(const HaarExpansion& a, const HaarExpansion& b);
  friend bool operator==(const HaarExpansion&, const HaarExpansion&) = default;

 private:
  Map coeffs_;
};

/// Piecewise constant function on the level-J cells of [0, 2^M), zero outside.
struct StepFunction {
  std::int64_t grid_level = 0;
  std::int64_t window = 0;
  std::vector<double> values;

  StepFunction() = default;
  /// Zero function; throws OverflowError for grids above 2^kMaxCellsLog2 cells.
  StepFunction(std::int64_t grid_level, std::int64_t window);

  static constexpr std::int64_t kMaxCellsLog2 = 28;

  std::size_t cell_count() const { return values.size(); }
  double cell_measure() const;
  double value_at(const DyadicPoint& x) const;
  /// Same function on the finer grid (J', M') with J' >= J and M' >= M.
  StepFunction refined(std::int64_t grid_level, std::int64_t window) const;
  double integral() const;
};

/// h^j_k(x) = 2^{j/2} h^0_0(2^j x - k).
double haar_eval(std::int64_t level, std::uint64_t position, const DyadicPoint& x);

/// Pointwise realisation of a finite Haar sum on level-J cells of [0, 2^M).
/// Needs J >= max level + 1 (GridTooCoarse) and every support inside the
/// window (WindowTooSmall).
StepFunction synthesize(const HaarExpansion& f, std::int64_t grid_level, std::int64_t window);
/// synthesize() on the coarsest grid that represents f exactly.
StepFunction synthesize(const HaarExpansion& f);

struct Analysis {
  HaarExpansion expansion;
  /// l2 norm of the coefficients left out (levels below the cutoff).
  double residual = 0.0;
};

/// Exact Haar coefficients <g, h^j_k> for every level j >= coarse_level.
Analysis analyze(const StepFunction& g, std::int64_t coarse_level);

/// L2 pairing by cell sums on the common refinement.
double inner_product(const StepFunction& f, const StepFunction& g);

}  // namespace dyadic
