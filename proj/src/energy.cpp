#include "dyadic/energy.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace dyadic {

namespace {

struct Moments {
  double f = 0.0;   // int f
  double g = 0.0;   // int g
  double fg = 0.0;  // int fg
};

}  // namespace

double bilinear_energy_step(const StepFunction& f_in, const StepFunction& g_in, FractionalOrder order, Exec exec) {
  const std::int64_t finest = std::max(f_in.grid_level, g_in.grid_level);
  const std::int64_t window = std::max(f_in.window, g_in.window);
  const StepFunction f = f_in.refined(finest, window);
  const StepFunction g = g_in.refined(finest, window);
  const double s = order.value();

  const double cell = f.cell_measure();
  std::vector<Moments> level_moments(f.values.size());
  parallel_fill(
      level_moments,
      [&](std::size_t c) {
        return Moments{f.values[c] * cell, g.values[c] * cell, f.values[c] * g.values[c] * cell};
      },
      exec);

  double near = 0.0;
  for (std::int64_t level = finest - 1; level >= -window; --level) {
    const double half = std::ldexp(1.0, static_cast<int>(-(level + 1)));
    // 2 |I|^{-1-2s}: the butterfly counts L x R and R x L.
    const double weight = 2.0 * std::exp2(static_cast<double>(level) * (1.0 + 2.0 * s));
    const std::size_t count = level_moments.size() / 2;
    near += weight * ordered_sum(
                         count,
                         [&](std::size_t k) {
                           const Moments& l = level_moments[2 * k];
                           const Moments& r = level_moments[2 * k + 1];
                           return half * l.fg + half * r.fg - l.f * r.g - r.f * l.g;
                         },
                         exec);
    std::vector<Moments> parent(count);
    parallel_fill(
        parent,
        [&](std::size_t k) {
          const Moments& l = level_moments[2 * k];
          const Moments& r = level_moments[2 * k + 1];
          return Moments{l.f + r.f, l.g + r.g, l.fg + r.fg};
        },
        exec);
    level_moments = std::move(parent);
  }

  // I = [0, 2^l), l > window: f, g vanish on the right half, and the
  // butterfly contributes (int fg) 2^{-2sl}.
  const double ratio = std::exp2(-2.0 * s);
  const double tail = level_moments.front().fg * std::pow(ratio, static_cast<double>(window + 1)) / (1.0 - ratio);
  return near + tail;
}

double bilinear_energy(const HaarExpansion& f, const HaarExpansion& g, FractionalOrder s, Exec exec) {
  if (f.empty() || g.empty()) return 0.0;
  return bilinear_energy_step(synthesize(f), synthesize(g), s, exec);
}

double energy_integral(const HaarExpansion& f, FractionalOrder s, Exec exec) {
  if (f.empty()) return 0.0;
  const StepFunction step = synthesize(f);
  return bilinear_energy_step(step, step, s, exec);
}

double spectral_energy(const HaarExpansion& f, FractionalOrder s) {
  double sum = 0.0;
  for (const auto& [key, c] : f) sum += c * c * std::exp2(2.0 * s.value() * static_cast<double>(key.level));
  return sum;
}

double gradient_energy(const HaarExpansion& f, FractionalOrder s) { return gradient(f, s).norm2_squared(); }

double energy_constant(FractionalOrder s) {
  const auto h = HaarExpansion::single(0, 0);
  return energy_integral(h, s, Exec::serial) / spectral_energy(h, s);
}

double energy_constant_spread(FractionalOrder s) {
  const std::array probes = {HaarExpansion::single(0, 0), HaarExpansion::single(1, 0), HaarExpansion::single(2, 3)};
  const double reference = energy_constant(s);
  double spread = 0.0;
  for (const auto& h : probes) {
    const double ratio = energy_integral(h, s, Exec::serial) / spectral_energy(h, s);
    spread = std::max(spread, std::abs(ratio - reference) / reference);
  }
  return spread;
}

EnergyReport energy_report(const HaarExpansion& f, FractionalOrder s) {
  return {s.value(), energy_integral(f, s), spectral_energy(f, s), gradient_energy(f, s), energy_constant(s)};
}

}  // namespace dyadic
