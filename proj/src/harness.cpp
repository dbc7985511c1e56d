#include "dyadic/harness.hpp"

#include "dyadic/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dyadic {

double lp_norm(const StepFunction& g, double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidP("p must be a finite value >= 1");
  double sum = 0.0;
  for (const double v : g.values) sum += std::pow(std::abs(v), p);
  return std::pow(sum * g.cell_measure(), 1.0 / p);
}

double lp_norm_modulus(std::span<const StepFunction> components, double p) {
  if (components.empty()) return 0.0;
  const StepFunction& first = components.front();
  StepFunction modulus(first.grid_level, first.window);
  for (const auto& c : components) {
    if (c.grid_level != first.grid_level || c.window != first.window) {
      throw GridTooCoarse("gradient components must share one grid");
    }
    for (std::size_t n = 0; n < c.values.size(); ++n) modulus.values[n] += c.values[n] * c.values[n];
  }
  for (double& v : modulus.values) v = std::sqrt(v);
  return lp_norm(modulus, p);
}

Dyadic omega_series(const Multiplier& m, const DyadicPoint& x, const DyadicPoint& y) {
  const DyadicInterval common = min_common_interval(x, y);
  Dyadic sum;
  DyadicInterval current = common;
  while (true) {
    // h_I(x) h_I(y) = +-2^j: + when x, y share a half of I.
    const bool same_half = cell_at(x, current.level + 1) == cell_at(y, current.level + 1);
    const Dyadic product = same_half ? Dyadic::pow2(current.level) : -Dyadic::pow2(current.level);
    sum += Dyadic::from_double(m(current)) * product;
    if (current.position == 0) break;
    current = ancestor(current, 1);
  }
  // Every further ancestor has position 0 and contains x, y in its left half:
  // sum_{j < current.level} m(I^0_0) 2^j = m(I^0_0) 2^{current.level}.
  sum += Dyadic::from_double(m.at_position(0)) * Dyadic::pow2(current.level);
  return sum * common.measure();
}

// ---------------------------------------------------------------------------

namespace {

struct Cell {
  std::size_t index;
  double value;
};

std::vector<Cell> nonzero_cells(const StepFunction& g) {
  std::vector<Cell> out;
  for (std::size_t c = 0; c < g.values.size(); ++c) {
    if (g.values[c] != 0.0) out.push_back({c, g.values[c]});
  }
  return out;
}

std::vector<bool> support_mask(const StepFunction& g) {
  double peak = 0.0;
  for (const double v : g.values) peak = std::max(peak, std::abs(v));
  std::vector<bool> mask(g.values.size(), false);
  for (std::size_t c = 0; c < g.values.size(); ++c) mask[c] = std::abs(g.values[c]) > 1e-12 * peak;
  return mask;
}

}  // namespace

PairingResult cz_pairing(const HaarExpansion& phi, const GradientField& psi, Exec exec) {
  PairingResult out;
  std::int64_t top = phi.empty() ? std::numeric_limits<std::int64_t>::min() : phi.max_level();
  std::int64_t window = phi.empty() ? 0 : phi.required_window();
  bool any_psi = false;
  for (const auto& [i, comp] : psi.components) {
    if (comp.empty()) continue;
    any_psi = true;
    top = std::max(top, comp.max_level());
    window = std::max(window, comp.required_window());
  }
  if (phi.empty() || !any_psi) return out;
  const std::int64_t grid = top + 1;
  window = std::max(window, -grid);

  const StepFunction phi_step = synthesize(phi, grid, window);
  const auto phi_mask = support_mask(phi_step);
  std::vector<std::pair<std::uint64_t, StepFunction>> psi_steps;
  for (const auto& [i, comp] : psi.components) {
    if (comp.empty()) continue;
    psi_steps.emplace_back(i, synthesize(comp, grid, window));
    const auto mask = support_mask(psi_steps.back().second);
    for (std::size_t c = 0; c < mask.size(); ++c) {
      if (mask[c] && phi_mask[c]) throw SupportsNotSeparated();
    }
  }

  for (const auto& [i, comp] : psi.components) {
    for (const auto& [key, c] : comp) {
      if (key.position == i) out.lhs += phi.coeff(key) * c;
    }
  }

  const auto phi_cells = nonzero_cells(phi_step);
  const double cell = phi_step.cell_measure();
  for (const auto& [i, step] : psi_steps) {
    const auto psi_cells = nonzero_cells(step);
    const std::uint64_t component = i;
    out.rhs += ordered_sum(
        psi_cells.size(),
        [&](std::size_t n) {
          const Cell& target = psi_cells[n];
          double inner = 0.0;
          for (const Cell& source : phi_cells) {
            if (source.index == target.index) continue;
            const auto common = min_common_interval(grid, target.index, source.index);
            const double kernel = std::ldexp(omega_partial(component, common.position), static_cast<int>(common.level));
            inner += kernel * source.value;
          }
          return target.value * inner;
        },
        exec);
  }
  out.rhs *= cell * cell;
  return out;
}

SeparatedPair random_separated_pair(SplitMix64& rng, std::int64_t grid_level, std::int64_t window, int components) {
  const std::size_t cells = std::size_t{1} << (grid_level + window);
  std::vector<int> owner(cells);
  std::size_t phi_count = 0;
  std::size_t psi_count = 0;
  while (phi_count < 2 || psi_count < 2) {
    phi_count = psi_count = 0;
    for (auto& o : owner) {
      o = static_cast<int>(rng.below(3));
      phi_count += o == 0;
      psi_count += o == 1;
    }
  }
  const auto draw = [&](int region, std::size_t count) {
    StepFunction g(grid_level, window);
    double mean = 0.0;
    for (std::size_t c = 0; c < cells; ++c) {
      if (owner[c] == region) {
        g.values[c] = rng.uniform(-1.0, 1.0);
        mean += g.values[c];
      }
    }
    mean /= static_cast<double>(count);
    for (std::size_t c = 0; c < cells; ++c) {
      if (owner[c] == region) g.values[c] -= mean;
    }
    return analyze(g, -window).expansion;
  };
  SeparatedPair out;
  out.phi = draw(0, phi_count);
  for (int i = 0; i < components; ++i) out.psi.components[static_cast<std::uint64_t>(i)] = draw(1, psi_count);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct CzTrial {
  double delta_knorm = 0.0;
  bool size_ok = true;
  std::uint64_t checks = 0;
  std::uint64_t violations = 0;
  DyadicPoint x;
  DyadicPoint y;
};

CzTrial run_cz_trial(const CzConfig& config, std::uint64_t index) {
  auto rng = SplitMix64::for_trial(config.seed, index);
  CzTrial out;
  out.x = random_point(rng, config.points);
  do {
    out.y = random_point(rng, config.points);
  } while (out.y == out.x);

  const DyadicInterval common = min_common_interval(out.x, out.y);
  const KernelVector k = kernel_vector_at(common);
  const Dyadic scaled = k.norm_squared() * k.delta_xy * k.delta_xy;
  out.size_ok = scaled <= Dyadic(4);
  out.delta_knorm = std::sqrt(scaled.to_double());

  const Dyadic d_xy = k.delta_xy;
  const auto check = [&](const DyadicPoint& moved_x, const DyadicPoint& moved_y, const DyadicPoint& anchor,
                         const DyadicPoint& moved) {
    if (moved_x == moved_y) return;
    if (delta(anchor, moved).ldexp(1) > d_xy) return;
    ++out.checks;
    if (!(kernel_vector(moved_x, moved_y) == k)) ++out.violations;
  };
  const auto near_x = random_point_in(rng, cell_at(out.x, common.level + 1), config.extra_bits);
  const auto near_y = random_point_in(rng, cell_at(out.y, common.level + 1), config.extra_bits);
  check(near_x, out.y, out.x, near_x);
  check(out.x, near_y, out.y, near_y);
  const auto free_x = random_point(rng, config.points);
  check(free_x, out.y, out.x, free_x);
  return out;
}

}  // namespace

CzReport check_cz_hypotheses(const CzConfig& config, Exec exec) {
  if (config.trials < 1) throw Error("trials must be >= 1");
  std::vector<CzTrial> trials(config.trials);
  parallel_fill(trials, [&](std::size_t t) { return run_cz_trial(config, t); }, exec);

  CzReport report;
  report.trials = config.trials;
  report.seed = config.seed;
  double worst = -1.0;
  for (const auto& t : trials) {
    report.size_violations += t.size_ok ? 0 : 1;
    report.regularity_checks += t.checks;
    report.regularity_violations += t.violations;
    if (t.delta_knorm > worst) {
      worst = t.delta_knorm;
      report.worst_x = t.x.str();
      report.worst_y = t.y.str();
    }
  }
  report.max_delta_knorm = worst;
  return report;
}

// ---------------------------------------------------------------------------

std::vector<double> lp_ratios(const HaarExpansion& u, FractionalOrder s, std::span<const double> p_list) {
  for (const double p : p_list) {
    if (!(p > 1.0) || !std::isfinite(p)) throw InvalidP("every p must satisfy 1 < p < inf");
  }
  std::vector<double> out(p_list.size(), 1.0);
  if (u.empty()) return out;
  const HaarExpansion lap = frac_laplacian(u, s);
  const std::int64_t grid = lap.max_level() + 1;
  const std::int64_t window = std::max(lap.required_window(), -grid);
  const StepFunction lap_step = synthesize(lap, grid, window);
  std::vector<StepFunction> parts;
  for (const auto& [i, comp] : split_positions(lap).components) parts.push_back(synthesize(comp, grid, window));
  for (std::size_t n = 0; n < p_list.size(); ++n) {
    out[n] = lp_norm_modulus(parts, p_list[n]) / lp_norm(lap_step, p_list[n]);
  }
  return out;
}

SweepReport ratio_sweep(const SweepConfig& config, Exec exec) {
  const FractionalOrder s(config.s);
  if (config.trials < 1) throw Error("trials must be >= 1");
  for (const double p : config.p_list) {
    if (!(p > 1.0) || !std::isfinite(p)) throw InvalidP("every p must satisfy 1 < p < inf");
  }
  std::vector<std::vector<double>> ratios(config.trials);
  parallel_fill(
      ratios,
      [&](std::size_t t) {
        auto rng = SplitMix64::for_trial(config.seed, t);
        return lp_ratios(random_expansion(rng, config.shape), s, config.p_list);
      },
      exec);

  SweepReport report;
  report.s = config.s;
  report.trials = config.trials;
  report.seed = config.seed;
  for (std::size_t n = 0; n < config.p_list.size(); ++n) {
    SweepEntry entry;
    entry.p = config.p_list[n];
    double sum = 0.0;
    for (std::size_t t = 0; t < ratios.size(); ++t) {
      sum += ratios[t][n];
      entry.min_ratio = t == 0 ? ratios[t][n] : std::min(entry.min_ratio, ratios[t][n]);
      if (t == 0 || ratios[t][n] > entry.max_ratio) {
        entry.max_ratio = ratios[t][n];
        entry.argmax_index = t;
      }
    }
    entry.mean_ratio = sum / static_cast<double>(ratios.size());
    report.per_p.push_back(entry);
  }
  return report;
}

}  // namespace dyadic
