// Property batteries behind `verify SUITE`.

#include "dyadic/errors.hpp"
#include "dyadic/harness.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

namespace dyadic {

namespace {

struct Tally {
  explicit Tally(std::string n, double tol = 0.0) : name(std::move(n)), tolerance(tol) {}

  std::string name;
  double tolerance = 0.0;
  double worst = 0.0;
  std::size_t samples = 0;
  std::size_t failures = 0;
  std::string witness;

  void error(double e, const std::string& where = {}) {
    ++samples;
    if (!(e <= tolerance)) {
      if (failures++ == 0) witness = where;
    }
    if (!(e <= worst)) worst = e;
  }
  void expect(bool ok, const std::string& where = {}) { error(ok ? 0.0 : 1.0, where); }

  CheckResult result() const {
    std::ostringstream os;
    os << samples << " samples, " << failures << " failures, worst " << worst;
    if (!witness.empty()) os << ", first failure at " << witness;
    return {name, failures == 0 && samples > 0, worst, os.str()};
  }
};

double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

// Coefficient-wise relative error; keys must match.
double expansion_error(const HaarExpansion& a, const HaarExpansion& b) {
  double worst = 0.0;
  for (const auto& [key, c] : a) worst = std::max(worst, rel(c, b.coeff(key)));
  for (const auto& [key, c] : b) worst = std::max(worst, rel(c, a.coeff(key)));
  return worst;
}

Multiplier random_multiplier(SplitMix64& rng, std::uint64_t positions) {
  std::map<std::uint64_t, double> base;
  for (std::uint64_t k = 0; k < positions; ++k) {
    if (rng.below(4) != 0) base[k] = rng.uniform(-2.0, 2.0);
  }
  return Multiplier(std::move(base), rng.uniform(-1.0, 1.0));
}

std::string pair_str(const DyadicPoint& x, const DyadicPoint& y) { return "(" + x.str() + ", " + y.str() + ")"; }

constexpr std::array kOrders = {0.25, 0.5, 0.75};

// ---------------------------------------------------------------------------

SuiteReport metric_suite(const SuiteOptions&) {
  SuiteReport out;
  constexpr std::size_t n = 256;  // k / 64 on [0, 4)
  std::vector<DyadicPoint> grid;
  for (std::uint64_t k = 0; k < n; ++k) grid.emplace_back(k, 6);

  constexpr std::int64_t diagonal = std::numeric_limits<std::int64_t>::max();
  std::vector<std::int64_t> level(n * n, diagonal);
  Tally sym{"symmetry"}, power{"dyadic-power values"}, minimal{"minimality"}, partition{"partition"},
      scale{"scale equivariance"}, ultra{"ultrametric"};
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) {
        power.expect(delta(grid[a], grid[b]).is_zero(), "diagonal");
        continue;
      }
      const auto& x = grid[a];
      const auto& y = grid[b];
      const auto common = min_common_interval(x, y);
      level[a * n + b] = common.level;
      const Dyadic d = delta(x, y);
      sym.expect(d == delta(y, x), pair_str(x, y));
      power.expect(d.sign() > 0 && d == Dyadic::pow2(-common.level) && d.mantissa() == 1, pair_str(x, y));
      minimal.expect(common.contains(x) && common.contains(y) &&
                         cell_at(x, common.level + 1) != cell_at(y, common.level + 1),
                     pair_str(x, y));
      // Exactly one butterfly B(I) among all candidate intervals holds (x, y).
      int hits = 0;
      DyadicInterval owner;
      for (std::int64_t j = -6; j <= 10; ++j) {
        const auto cell = cell_at(x, j);
        if (cell.contains(y) && cell_at(x, j + 1) != cell_at(y, j + 1)) {
          ++hits;
          owner = cell;
        }
      }
      const auto label = classify(x, y);
      partition.expect(hits == 1 && label.class_index == owner.position && label.level_index == owner.level &&
                           d == Dyadic::pow2(-label.level_index),
                       pair_str(x, y));
      const auto label2 = classify(x.doubled(), y.doubled());
      scale.expect(delta(x.doubled(), y.doubled()) == d.ldexp(1) && label2.class_index == label.class_index &&
                       label2.level_index == label.level_index - 1,
                   pair_str(x, y));
    }
  }
  // delta(x,z) <= max(delta(x,y), delta(y,z))  <=>  level(x,z) >= min(level(x,y), level(y,z)).
  std::size_t violations = 0;
  std::string first;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const std::int64_t ab = level[a * n + b];
      for (std::size_t c = 0; c < n; ++c) {
        if (level[a * n + c] < std::min(ab, level[b * n + c]) && violations++ == 0) {
          first = grid[a].str() + ", " + grid[b].str() + ", " + grid[c].str();
        }
      }
    }
  }
  ultra.expect(violations == 0, first);
  Tally dil{"dilate = ancestor iff position 0"};
  for (std::int64_t j = -5; j <= 5; ++j) {
    for (std::uint64_t k = 0; k < 64; ++k) {
      const DyadicInterval iv{j, k};
      dil.expect((dilate(iv, 1) == ancestor(iv, 1)) == (k == 0), "I^" + std::to_string(j) + "_" + std::to_string(k));
    }
  }
  for (const auto* t : {&sym, &power, &minimal, &partition, &scale, &ultra, &dil}) out.checks.push_back(t->result());
  return out;
}

SuiteReport haar_suite(const SuiteOptions& options) {
  SuiteReport out;
  auto rng = SplitMix64::for_trial(options.seed, 1);
  Tally ortho{"orthonormality", 1e-12};
  std::vector<DyadicInterval> keys;
  while (keys.size() < 40) {
    const DyadicInterval key{rng.between(-3, 4), rng.below(16)};
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
  }
  std::vector<StepFunction> waves;
  for (const auto& key : keys) waves.push_back(synthesize(HaarExpansion::single(key.level, key.position), 5, 7));
  for (std::size_t a = 0; a < keys.size(); ++a) {
    for (std::size_t b = 0; b < keys.size(); ++b) {
      ortho.error(std::abs(inner_product(waves[a], waves[b]) - (a == b ? 1.0 : 0.0)));
    }
  }
  Tally parseval{"Parseval", 1e-12}, round{"analyze o synthesize", 1e-12};
  const ExpansionShape shape{10, -3, 5, 32};
  for (int t = 0; t < 200; ++t) {
    const auto f = random_expansion(rng, shape);
    if (f.empty()) continue;
    const auto step = synthesize(f);
    parseval.error(rel(inner_product(step, step), f.norm2_squared()));
    const auto back = analyze(step, f.min_level());
    double err = back.residual;
    for (const auto& [key, c] : back.expansion) err = std::max(err, std::abs(c - f.coeff(key)));
    for (const auto& [key, c] : f) err = std::max(err, std::abs(c - back.expansion.coeff(key)));
    round.error(err);
  }
  for (const auto* t : {&ortho, &parseval, &round}) out.checks.push_back(t->result());
  return out;
}

SuiteReport multiplier_suite(const SuiteOptions& options) {
  SuiteReport out;
  auto rng = SplitMix64::for_trial(options.seed, 2);
  Tally homog{"m(I^j_k) = m(I^0_k)"}, dil{"m(2^l I) = m(I)"}, partials{"sum_i m_i(I)^2 = 1"};
  const Multiplier m = random_multiplier(rng, 48);
  for (int t = 0; t < 1000; ++t) {
    const DyadicInterval iv{rng.between(-40, 40), rng.below(64)};
    homog.expect(multiplier_eval(m, iv) == multiplier_eval(m, {0, iv.position}));
    dil.expect(m(dilate(iv, rng.between(-10, 10))) == m(iv));
    double sum = 0.0;
    for (std::uint64_t i = 0; i < 64; ++i) sum += std::pow(canonical_partial(i)(iv), 2);
    partials.expect(sum == 1.0);
  }
  for (const auto* t : {&homog, &dil, &partials}) out.checks.push_back(t->result());
  return out;
}

SuiteReport kernel_suite(const SuiteOptions& options) {
  SuiteReport out;
  auto rng = SplitMix64::for_trial(options.seed, 3);
  const PointShape shape;
  Tally series{"omega = delta * direct series"}, homog{"Omega(2x,2y) = Omega(x,y)"}, khomog{"K(2x,2y) = K(x,y)/2"},
      butterfly{"Omega constant on butterflies"};
  for (int t = 0; t < 1000; ++t) {
    const Multiplier m = random_multiplier(rng, 1 + rng.below(64));
    const auto x = random_point(rng, shape);
    auto y = random_point(rng, shape);
    if (x == y) continue;
    const Dyadic omega = omega_eval(m, x, y);
    series.expect(omega == omega_series(m, x, y), pair_str(x, y));
    homog.expect(omega_eval(m, x.doubled(), y.doubled()) == omega, pair_str(x, y));
    const auto k = kernel_vector(x, y);
    const auto k2 = kernel_vector(x.doubled(), y.doubled());
    bool halves = k2.entries.size() == k.entries.size();
    for (const auto& [i, v] : k.entries) halves = halves && k2.component(i).ldexp(1) == v;
    khomog.expect(halves, pair_str(x, y));
    const auto common = min_common_interval(x, y);
    const auto x2 = random_point_in(rng, common.left_half(), 6);
    const auto y2 = random_point_in(rng, common.right_half(), 6);
    butterfly.expect(omega_eval(m, x2, y2) == omega && omega_eval(m, y2, x2) == omega, pair_str(x, y));
  }
  for (const auto* t : {&series, &homog, &khomog, &butterfly}) out.checks.push_back(t->result());

  CzConfig config;
  config.trials = 2000;
  config.seed = options.seed;
  const auto report = check_cz_hypotheses(config, options.exec);
  out.checks.push_back({"size bound delta |K| <= 2", report.size_violations == 0, report.max_delta_knorm,
                        "max delta|K| = " + std::to_string(report.max_delta_knorm) + " at (" + report.worst_x + ", " +
                            report.worst_y + ")"});
  out.checks.push_back({"K(x',y) = K(x,y) when 2 delta(x,x') <= delta(x,y)",
                        report.regularity_violations == 0 && report.regularity_checks > 0,
                        static_cast<double>(report.regularity_violations),
                        std::to_string(report.regularity_checks) + " triples"});
  return out;
}

SuiteReport operators_suite(const SuiteOptions& options) {
  SuiteReport out;
  auto rng = SplitMix64::for_trial(options.seed, 4);
  Tally dir{"D^s_m = T_m o D^s"}, part{"D^s_(i) = T_(i) o D^s"}, grad{"grad^s = T o D^s"},
      inv{"D^s o D^-s = id", 1e-12}, dil{"D^s U = 2^s U D^s", 1e-14}, iso{"|| |T g|_l2 ||_2 = ||g||_2", 1e-12},
      comp{"T_m o T_m' = T_mm'", 1e-14};
  const ExpansionShape shape{12, -4, 6, 16};
  for (const double sv : kOrders) {
    const FractionalOrder s(sv);
    for (int t = 0; t < 200; ++t) {
      const auto f = random_expansion(rng, shape);
      const Multiplier m = random_multiplier(rng, 16);
      const Multiplier m2 = random_multiplier(rng, 16);
      const auto lap = frac_laplacian(f, s);
      dir.expect(directional(f, s, m) == apply_multiplier(lap, m));
      for (std::uint64_t i = 0; i <= 16; ++i) {
        part.expect(partial(f, s, i) == project(lap, i) && partial(f, s, i) == directional(f, s, canonical_partial(i)));
      }
      const auto g = gradient(f, s);
      bool same = true;
      for (const auto& [i, c] : g.components) same = same && c == project(lap, i) && c == partial(f, s, i);
      std::size_t positions = 0;
      for (std::uint64_t i = 0; i < 16; ++i) positions += project(f, i).empty() ? 0 : 1;
      grad.expect(same && g.components.size() == positions);
      inv.error(expansion_error(frac_laplacian(inv_frac_laplacian(f, s), s), f));
      dil.error(expansion_error(frac_laplacian(dilate_expansion(f), s),
                                dilate_expansion(lap).scaled(std::exp2(sv))));
      for (std::uint64_t i = 0; i < 4; ++i) {
        dil.error(expansion_error(partial(dilate_expansion(f), s, i), dilate_expansion(partial(f, s, i)).scaled(std::exp2(sv))));
      }
      comp.error(expansion_error(apply_multiplier(apply_multiplier(f, m2), m), apply_multiplier(f, m * m2)));
      if (!f.empty() && sv == 0.5) {
        const std::int64_t grid = f.max_level() + 1;
        const std::int64_t window = f.required_window();
        std::vector<StepFunction> parts;
        for (const auto& [i, c] : split_positions(f).components) parts.push_back(synthesize(c, grid, window));
        iso.error(rel(lp_norm_modulus(parts, 2.0), lp_norm(synthesize(f, grid, window), 2.0)));
      }
    }
  }
  for (const auto* t : {&dir, &part, &grad, &inv, &dil, &iso, &comp}) out.checks.push_back(t->result());
  return out;
}

SuiteReport energy_suite(const SuiteOptions& options) {
  SuiteReport out;
  auto rng = SplitMix64::for_trial(options.seed, 5);
  Tally c_half{"c(1/2) = 3", 1e-9}, spread{"c(s) independent of h", 1e-9}, identity{"E = c * spectral", 1e-9},
      grad{"spectral = gradient energy", 1e-12}, polar{"polarization", 1e-10}, bilin{"bilinear = c sum <d_i f, d_i g>", 1e-9};
  c_half.error(std::abs(energy_constant(FractionalOrder(0.5)) - 3.0));
  const ExpansionShape shape{20, -4, 6, 64};
  for (const double sv : kOrders) {
    const FractionalOrder s(sv);
    const double c = energy_constant(s);
    spread.error(energy_constant_spread(s));
    for (int t = 0; t < 12; ++t) {
      const auto f = random_expansion(rng, shape);
      // Correlated g so that <f, g>_E is not a cancellation of unrelated terms.
      const auto g = f.scaled(rng.uniform(-1.0, 1.0)) + random_expansion(rng, shape);
      const double ef = energy_integral(f, s, options.exec);
      const double scale = std::sqrt(ef * energy_integral(g, s, options.exec));
      identity.error(rel(ef, c * spectral_energy(f, s)));
      grad.error(rel(spectral_energy(f, s), gradient_energy(f, s)));
      const double b = bilinear_energy(f, g, s, options.exec);
      const double quarter = 0.25 * (energy_integral(f + g, s, options.exec) - energy_integral(f - g, s, options.exec));
      polar.error(std::abs(b - quarter) / std::max(std::abs(b), scale));
      const auto gf = gradient(f, s);
      const auto gg = gradient(g, s);
      double pairing = 0.0;
      for (const auto& [i, comp] : gf.components) {
        for (const auto& [key, v] : comp) pairing += v * gg.component(i).coeff(key);
      }
      bilin.error(std::abs(b - c * pairing) / std::max(std::abs(b), scale));
    }
  }
  for (const auto* t : {&c_half, &spread, &identity, &grad, &polar, &bilin}) out.checks.push_back(t->result());
  return out;
}

SuiteReport cz_suite(const SuiteOptions& options) {
  SuiteReport out;
  CzConfig config;
  config.seed = options.seed;
  const auto report = check_cz_hypotheses(config, options.exec);
  out.checks.push_back({"(i) delta |K|_l2 <= 2", report.size_violations == 0, report.max_delta_knorm,
                        std::to_string(report.trials) + " pairs"});
  out.checks.push_back({"(ii) K(x',y) = K(x,y)", report.regularity_violations == 0 && report.regularity_checks > 0,
                        static_cast<double>(report.regularity_violations),
                        std::to_string(report.regularity_checks) + " triples"});

  Tally pairing{"(iii) pairing lhs = rhs", 1e-8};
  // phi = chi[3/8,1/2) - chi[1/2,5/8), psi_0 = chi[1/4,3/8) - chi[5/8,3/4): both sides 3/32.
  StepFunction phi(3, 0), psi(3, 0);
  phi.values[3] = 1.0;
  phi.values[4] = -1.0;
  psi.values[2] = 1.0;
  psi.values[5] = -1.0;
  GradientField field;
  field.components[0] = analyze(psi, 0).expansion;
  const auto fixed = cz_pairing(analyze(phi, 0).expansion, field, options.exec);
  pairing.error(std::max(std::abs(fixed.lhs - 3.0 / 32.0), std::abs(fixed.rhs - 3.0 / 32.0)), "fixed example");
  GradientField far;
  far.components[0] = HaarExpansion::single(1, 2);
  const auto zero = cz_pairing(HaarExpansion::single(0, 0), far, options.exec);
  pairing.error(std::max(std::abs(zero.lhs), std::abs(zero.rhs)), "h00 vs h^1_2");
  auto rng = SplitMix64::for_trial(options.seed, 6);
  for (int t = 0; t < 50; ++t) {
    const auto pair = random_separated_pair(rng, 3 + static_cast<std::int64_t>(rng.below(2)), 1 + static_cast<std::int64_t>(rng.below(2)));
    const auto r = cz_pairing(pair.phi, pair.psi, options.exec);
    pairing.error(std::abs(r.lhs - r.rhs) / std::max(std::abs(r.lhs), 1.0), "random pair " + std::to_string(t));
  }
  out.checks.push_back(pairing.result());

  Tally reject{"overlapping supports rejected"};
  GradientField overlap;
  overlap.components[0] = HaarExpansion::single(0, 0);
  try {
    cz_pairing(HaarExpansion::single(1, 0), overlap, options.exec);
    reject.expect(false);
  } catch (const SupportsNotSeparated&) {
    reject.expect(true);
  }
  out.checks.push_back(reject.result());
  return out;
}

SuiteReport sweep_suite(const SuiteOptions& options) {
  SuiteReport out;
  SweepConfig config;
  config.seed = options.seed;
  config.trials = 500;
  config.p_list = {1.5, 2.0, 3.0, 4.0};
  const auto base = ratio_sweep(config, options.exec);
  config.trials = 1000;
  const auto doubled = ratio_sweep(config, options.exec);

  Tally two{"R_2 = 1", 1e-10}, stable{"max R_p stable under doubled trials", 0.05}, single{"R_p(h) = 1", 1e-12},
      dil{"R_p(U u) = R_p(u)", 1e-8};
  for (std::size_t n = 0; n < base.per_p.size(); ++n) {
    const auto& a = base.per_p[n];
    const auto& b = doubled.per_p[n];
    if (a.p == 2.0) {
      two.error(std::max(std::abs(b.max_ratio - 1.0), std::abs(b.min_ratio - 1.0)));
    } else {
      stable.error(std::isfinite(b.max_ratio) ? std::abs(b.max_ratio - a.max_ratio) / a.max_ratio : 1e300,
                   "p = " + std::to_string(a.p));
    }
  }
  const FractionalOrder s(config.s);
  auto rng = SplitMix64::for_trial(options.seed, 7);
  for (int t = 0; t < 50; ++t) {
    const auto h = HaarExpansion::single(rng.between(-3, 3), rng.below(16), rng.uniform(0.5, 2.0));
    for (const double r : lp_ratios(h, s, config.p_list)) single.error(std::abs(r - 1.0));
    const auto u = random_expansion(rng, config.shape);
    const auto r0 = lp_ratios(u, s, config.p_list);
    const auto r1 = lp_ratios(dilate_expansion(u), s, config.p_list);
    for (std::size_t n = 0; n < r0.size(); ++n) dil.error(rel(r0[n], r1[n]));
  }
  for (const auto* t : {&two, &stable, &single, &dil}) out.checks.push_back(t->result());
  return out;
}

using SuiteFn = std::function<SuiteReport(const SuiteOptions&)>;

const std::map<std::string, SuiteFn>& registry() {
  static const std::map<std::string, SuiteFn> suites = {
      {"metric", metric_suite},     {"haar", haar_suite},         {"multiplier", multiplier_suite},
      {"kernel", kernel_suite},     {"operators", operators_suite}, {"energy", energy_suite},
      {"cz", cz_suite},             {"sweep", sweep_suite},
  };
  return suites;
}

}  // namespace

bool SuiteReport::passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"metric", "haar",   "multiplier", "kernel", "operators",
                                                 "energy", "cz",     "sweep",      "all"};
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  SuiteReport report;
  if (name == "all") {
    report.suite = "all";
    for (const auto& suite : suite_names()) {
      if (suite == "all") continue;
      auto part = registry().at(suite)(options);
      for (auto& check : part.checks) {
        check.name = suite + ": " + check.name;
        report.checks.push_back(std::move(check));
      }
    }
  } else {
    const auto it = registry().find(name);
    if (it == registry().end()) throw UnknownSuite(name);
    report = it->second(options);
    report.suite = name;
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace dyadic
