#include "dyadic/haar.hpp"

#include "dyadic/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace dyadic {

namespace {

double half_power(std::int64_t level) { return std::exp2(static_cast<double>(level) / 2.0); }

}  // namespace

HaarExpansion::HaarExpansion(const Map& coeffs) {
  for (const auto& [key, c] : coeffs) set(key, c);
}

HaarExpansion HaarExpansion::single(std::int64_t level, std::uint64_t position, double c) {
  HaarExpansion out;
  out.set({level, position}, c);
  return out;
}

double HaarExpansion::coeff(const DyadicInterval& key) const {
  const auto it = coeffs_.find(key);
  return it == coeffs_.end() ? 0.0 : it->second;
}

void HaarExpansion::set(const DyadicInterval& key, double c) {
  if (std::abs(c) < kZero) {
    coeffs_.erase(key);
  } else {
    coeffs_[key] = c;
  }
}

void HaarExpansion::add(const DyadicInterval& key, double c) { set(key, coeff(key) + c); }

std::int64_t HaarExpansion::min_level() const {
  std::int64_t out = std::numeric_limits<std::int64_t>::max();
  for (const auto& [key, c] : coeffs_) out = std::min(out, key.level);
  return out;
}

std::int64_t HaarExpansion::max_level() const {
  std::int64_t out = std::numeric_limits<std::int64_t>::min();
  for (const auto& [key, c] : coeffs_) out = std::max(out, key.level);
  return out;
}

double HaarExpansion::norm2_squared() const {
  double sum = 0.0;
  for (const auto& [key, c] : coeffs_) sum += c * c;
  return sum;
}

std::int64_t HaarExpansion::required_window() const {
  // (k + 1) 2^-j <= 2^M  <=>  M >= bit_width(k) - j, since k + 1 <= 2^bit_width(k).
  std::int64_t window = std::numeric_limits<std::int64_t>::min();
  for (const auto& [key, c] : coeffs_) {
    window = std::max(window, static_cast<std::int64_t>(std::bit_width(key.position)) - key.level);
  }
  return coeffs_.empty() ? 0 : window;
}

HaarExpansion HaarExpansion::scaled(double factor) const {
  HaarExpansion out;
  for (const auto& [key, c] : coeffs_) out.set(key, c * factor);
  return out;
}

HaarExpansion operator+(const HaarExpansion& a, const HaarExpansion& b) {
  HaarExpansion out = a;
  for (const auto& [key, c] : b) out.add(key, c);
  return out;
}

HaarExpansion operator-(const HaarExpansion& a, const HaarExpansion& b) {
  HaarExpansion out = a;
  for (const auto& [key, c] : b) out.add(key, -c);
  return out;
}

StepFunction::StepFunction(std::int64_t grid_level_, std::int64_t window_)
    : grid_level(grid_level_), window(window_) {
  const std::int64_t log_cells = window + grid_level;
  if (log_cells < 0) throw WindowTooSmall("grid has no cells: window + grid level < 0");
  if (log_cells > kMaxCellsLog2) throw OverflowError("step function grid exceeds 2^28 cells");
  values.assign(std::size_t{1} << log_cells, 0.0);
}

double StepFunction::cell_measure() const { return std::ldexp(1.0, static_cast<int>(-grid_level)); }

double StepFunction::value_at(const DyadicPoint& x) const {
  const auto cell = cell_at(x, grid_level);
  return cell.position < values.size() ? values[cell.position] : 0.0;
}

StepFunction StepFunction::refined(std::int64_t grid_level_, std::int64_t window_) const {
  if (grid_level_ < grid_level || window_ < window) throw GridTooCoarse("refinement must not coarsen the grid");
  StepFunction out(grid_level_, window_);
  const std::size_t factor = std::size_t{1} << (grid_level_ - grid_level);
  for (std::size_t c = 0; c < values.size(); ++c) {
    std::fill_n(out.values.begin() + static_cast<std::ptrdiff_t>(c * factor), factor, values[c]);
  }
  return out;
}

double StepFunction::integral() const {
  double sum = 0.0;
  for (const double v : values) sum += v;
  return sum * cell_measure();
}

double haar_eval(std::int64_t level, std::uint64_t position, const DyadicPoint& x) {
  if (cell_at(x, level).position != position) return 0.0;
  const bool right = (cell_at(x, level + 1).position & 1U) != 0;
  return right ? -half_power(level) : half_power(level);
}

StepFunction synthesize(const HaarExpansion& f, std::int64_t grid_level, std::int64_t window) {
  for (const auto& [key, c] : f) {
    if (grid_level < key.level + 1) {
      throw GridTooCoarse("grid level " + std::to_string(grid_level) + " cannot resolve level " +
                          std::to_string(key.level));
    }
  }
  if (!f.empty() && f.required_window() > window) {
    throw WindowTooSmall("window 2^" + std::to_string(window) + " does not contain every support");
  }
  StepFunction out(grid_level, window);
  for (const auto& [key, c] : f) {
    const std::int64_t shift = grid_level - key.level;
    const std::size_t width = std::size_t{1} << shift;
    const std::size_t first = static_cast<std::size_t>(key.position) << shift;
    const double amp = c * half_power(key.level);
    for (std::size_t i = 0; i < width / 2; ++i) out.values[first + i] += amp;
    for (std::size_t i = width / 2; i < width; ++i) out.values[first + i] -= amp;
  }
  return out;
}

StepFunction synthesize(const HaarExpansion& f) {
  if (f.empty()) return StepFunction(0, 0);
  return synthesize(f, f.max_level() + 1, std::max<std::int64_t>(f.required_window(), -f.max_level() - 1));
}

Analysis analyze(const StepFunction& g, std::int64_t coarse_level) {
  Analysis out;
  const std::int64_t finest = g.grid_level;
  const std::int64_t coarsest = -g.window;
  double residual_sq = 0.0;

  // Integrals over the cells of the current level, coarsened level by level.
  std::vector<double> sums(g.values.size());
  const double measure = g.cell_measure();
  for (std::size_t c = 0; c < sums.size(); ++c) sums[c] = g.values[c] * measure;

  for (std::int64_t level = finest - 1; level >= coarsest; --level) {
    const double amp = half_power(level);
    std::vector<double> parent(sums.size() / 2);
    for (std::size_t k = 0; k < parent.size(); ++k) {
      const double c = amp * (sums[2 * k] - sums[2 * k + 1]);
      if (level >= coarse_level) {
        out.expansion.set({level, k}, c);
      } else {
        residual_sq += c * c;
      }
      parent[k] = sums[2 * k] + sums[2 * k + 1];
    }
    sums = std::move(parent);
  }

  // Above the window only I^j_0 = [0, 2^-j) meets the support, with the whole
  // window in its left half: <g, h^j_0> = 2^{j/2} int g.
  const double total = sums.front();
  for (std::int64_t level = coarsest - 1; level >= coarse_level; --level) {
    out.expansion.set({level, 0}, half_power(level) * total);
  }
  residual_sq += total * total * std::ldexp(1.0, static_cast<int>(std::min(coarse_level, coarsest)));
  out.residual = std::sqrt(residual_sq);
  return out;
}

double inner_product(const StepFunction& f, const StepFunction& g) {
  const std::int64_t level = std::max(f.grid_level, g.grid_level);
  const std::int64_t window = std::max(f.window, g.window);
  const StepFunction a = f.refined(level, window);
  const StepFunction b = g.refined(level, window);
  double sum = 0.0;
  for (std::size_t c = 0; c < a.values.size(); ++c) sum += a.values[c] * b.values[c];
  return sum * a.cell_measure();
}

}  // namespace dyadic
