// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include "dyadic/energy.hpp"
#include "dyadic/errors.hpp"
#include "dyadic/harness.hpp"
#include "dyadic/operators.hpp"
#include "dyadic/random.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace dyadic;

namespace {

constexpr double kParsevalTol = 1e-12;
constexpr double kRoundTripTol = 1e-12;
constexpr double kPairingTol = 1e-8;
constexpr double kFixedPairingTol = 1e-12;
constexpr double kEnergyTol = 1e-9;
constexpr double kGradientTol = 1e-12;
constexpr double kIsometryTol = 1e-10;
constexpr double kStabilityTol = 0.05;
constexpr double kDilationTol = 1e-8;
constexpr double kMetricSeconds = 5.0;
constexpr double kSuiteSeconds = 60.0;
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Multiplier random_multiplier(SplitMix64& rng, std::uint64_t positions) {
  std::map<std::uint64_t, double> base;
  for (std::uint64_t k = 0; k < positions; ++k) {
    if (rng.below(3) != 0) base[k] = rng.uniform(-1.0, 1.0);
  }
  return Multiplier(base, rng.below(2) ? rng.uniform(-1.0, 1.0) : 0.0);
}

// Point of [0, 8) with scale at most 18.
DyadicPoint small_point(SplitMix64& rng) {
  const auto q = static_cast<unsigned>(rng.below(19));
  return DyadicPoint(rng.below(std::uint64_t{1} << (q + 3)), q);
}

// 1. delta on all pairs of {k/64 : k < 256}.
Outcome metric() {
  const auto t0 = Clock::now();
  constexpr std::size_t n = 256;
  std::vector<DyadicPoint> pts;
  for (std::uint64_t k = 0; k < n; ++k) pts.emplace_back(k, 6);
  std::vector<std::int64_t> level(n * n, 0);
  std::uint64_t bad = 0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const Dyadic d = delta(pts[a], pts[b]);
      if (a == b) {
        bad += !d.is_zero();
        continue;
      }
      bad += d != delta(pts[b], pts[a]) || d != oracle::delta(pts[a], pts[b]) || d.mantissa() != 1;
      level[a * n + b] = -d.exponent();
      // exactly one butterfly level holds the pair, and its position is the class
      int hits = 0;
      std::int64_t hit_level = 0;
      std::uint64_t hit_pos = 0;
      for (std::int64_t j = -4; j <= 8; ++j) {
        const auto ca = cell_at(pts[a], j);
        if (ca == cell_at(pts[b], j) && cell_at(pts[a], j + 1) != cell_at(pts[b], j + 1)) {
          ++hits;
          hit_level = j;
          hit_pos = ca.position;
        }
      }
      const auto label = classify(pts[a], pts[b]);
      bad += hits != 1 || label.level_index != hit_level || label.class_index != hit_pos;
    }
  }
  // ultrametric inequality on all triples, via levels: delta = 2^-level
  std::uint64_t ultra = 0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      const auto ab = level[a * n + b];
      for (std::size_t c = 0; c < n; ++c) {
        if (c == a || c == b) continue;
        ultra += ab < std::min(level[a * n + c], level[c * n + b]);
      }
    }
  }
  const double secs = seconds_since(t0);
  return {bad == 0 && ultra == 0 && secs < kMetricSeconds,
          std::to_string(n * (n - 1)) + " pairs, " + std::to_string(bad) + " bad, " + std::to_string(ultra) +
              " ultrametric violations, " + fmt("%.2f s", secs)};
}

// 2. Orthonormality, Parseval, round trip.
Outcome haar() {
  auto rng = SplitMix64::for_trial(kSeed, 2);
  std::vector<DyadicInterval> keys;
  for (int q = 0; q < 40; ++q) keys.push_back({rng.between(-3, 4), rng.below(12)});
  double ortho = 0.0;
  for (const auto& a : keys) {
    for (const auto& b : keys) {
      const double ip = inner_product(synthesize(HaarExpansion::single(a.level, a.position)),
                                      synthesize(HaarExpansion::single(b.level, b.position)));
      ortho = std::max(ortho, std::abs(ip - (a == b ? 1.0 : 0.0)));
    }
  }
  double parseval = 0.0, trip = 0.0;
  const ExpansionShape shape{20, -4, 6, 64};
  for (int t = 0; t < 200; ++t) {
    const auto f = random_expansion(rng, shape);
    const auto g = synthesize(f);
    parseval = std::max(parseval, rel(inner_product(g, g), f.norm2_squared()));
    const auto back = analyze(g, f.min_level());
    double scale = 0.0;
    for (const auto& [k, c] : f) scale = std::max(scale, std::abs(c));
    double err = back.residual;
    for (const auto& [k, c] : f) err = std::max(err, std::abs(back.expansion.coeff(k) - c));
    for (const auto& [k, c] : back.expansion) err = std::max(err, std::abs(c - f.coeff(k)));
    trip = std::max(trip, err / scale);
  }
  return {ortho < kParsevalTol && parseval < kParsevalTol && trip < kRoundTripTol,
          fmt("orthonormality %.2e", ortho) + fmt(", Parseval %.2e", parseval) + fmt(", round trip %.2e", trip)};
}

// 3. m(I^j_k) = m(I^0_k), compared against the base table.
Outcome homogeneity() {
  auto rng = SplitMix64::for_trial(kSeed, 3);
  std::map<std::uint64_t, double> base;
  for (std::uint64_t k = 0; k < 48; ++k) base[k] = rng.uniform(-1.0, 1.0);
  const double dflt = 0.375;
  const Multiplier m(base, dflt);
  std::uint64_t bad = 0;
  for (int t = 0; t < 1000; ++t) {
    const DyadicInterval iv{rng.between(-60, 60), rng.below(64)};
    const double expect = iv.position < 48 ? base[iv.position] : dflt;
    bad += multiplier_eval(m, iv) != expect || multiplier_eval(m, iv) != multiplier_eval(m, {0, iv.position});
  }
  return {bad == 0, "1000 intervals, " + std::to_string(bad) + " mismatches"};
}

// 4. Omega against the term-by-term series, and Omega(2x,2y) = Omega(x,y).
Outcome kernel_formula() {
  auto rng = SplitMix64::for_trial(kSeed, 4);
  std::uint64_t bad = 0, scale_bad = 0, nonzero = 0, pairs = 0;
  while (pairs < 1000) {
    const auto m = random_multiplier(rng, 1 + rng.below(64));
    const auto x = small_point(rng);
    const auto y = small_point(rng);
    if (x == y) continue;
    ++pairs;
    const Dyadic omega = omega_eval(m, x, y);
    bad += omega != oracle::omega_series(m, x, y);
    scale_bad += omega_eval(m, x.doubled(), y.doubled()) != omega || omega_eval(m, x.halved(), y.halved()) != omega;
    nonzero += !omega.is_zero();
  }
  return {bad == 0 && scale_bad == 0,
          "1000 pairs (" + std::to_string(nonzero) + " nonzero), " + std::to_string(bad) + " series mismatches, " +
              std::to_string(scale_bad) + " scaling mismatches"};
}

// 5. delta^2 |K|^2 <= 4, exactly.
Outcome size_bound() {
  auto rng = SplitMix64::for_trial(kSeed, 5);
  std::uint64_t bad = 0, pairs = 0;
  Dyadic worst;
  while (pairs < 10000) {
    const auto x = random_point(rng, {});
    const auto y = random_point(rng, {});
    if (x == y) continue;
    ++pairs;
    const auto k = kernel_vector(x, y);
    const Dyadic d = oracle::delta(x, y);
    const Dyadic v = k.norm_squared() * d * d;
    worst = std::max(worst, v);
    bad += v > Dyadic(4);
  }
  CzConfig cfg;
  cfg.trials = 10000;
  cfg.seed = kSeed;
  const auto report = check_cz_hypotheses(cfg);
  return {bad == 0 && report.size_violations == 0,
          "10000 pairs, max (delta|K|)^2 = " + worst.str() + fmt(", harness max delta|K| = %.6f", report.max_delta_knorm)};
}

// 6. K(x', y) = K(x, y) when 2 delta(x, x') <= delta(x, y); same in y.
Outcome regularity() {
  auto rng = SplitMix64::for_trial(kSeed, 6);
  std::uint64_t bad = 0, triples = 0, skipped = 0;
  while (triples < 10000) {
    const auto x = random_point(rng, {});
    const auto y = random_point(rng, {});
    if (x == y) continue;
    const auto level = oracle::common_level(x, y);
    const auto depth = static_cast<unsigned>(1 + rng.below(4));
    const bool move_x = rng.below(2) == 0;
    const auto& anchor = move_x ? x : y;
    const auto moved = random_point_in(rng, cell_at(anchor, level + depth), 6);
    if (moved == (move_x ? y : x)) continue;
    if (oracle::delta(anchor, moved).ldexp(1) > oracle::delta(x, y)) {
      ++skipped;
      continue;
    }
    ++triples;
    const auto k = kernel_vector(x, y);
    const auto k2 = move_x ? kernel_vector(moved, y) : kernel_vector(x, moved);
    bad += k.entries != k2.entries;
  }
  CzConfig cfg;
  cfg.trials = 10000;
  cfg.seed = kSeed + 1;
  const auto report = check_cz_hypotheses(cfg);
  return {bad == 0 && report.regularity_violations == 0 && skipped == 0,
          "10000 triples, " + std::to_string(bad) + " changed; harness " + std::to_string(report.regularity_checks) +
              " checks, " + std::to_string(report.regularity_violations) + " violations"};
}

// 7. Pairing identity.
Outcome pairing() {
  StepFunction phi(3, 0), psi0(3, 0);
  phi.values = {0, 0, 0, 1, -1, 0, 0, 0};
  psi0.values = {0, 0, 1, 0, 0, -1, 0, 0};
  GradientField field;
  field.components[0] = analyze(psi0, 0).expansion;
  const auto fixed = cz_pairing(analyze(phi, 0).expansion, field);
  const double fixed_err = std::max(std::abs(fixed.lhs - 3.0 / 32.0), std::abs(fixed.rhs - 3.0 / 32.0));

  auto rng = SplitMix64::for_trial(kSeed, 7);
  double worst = 0.0;
  double largest = 0.0;
  for (int t = 0; t < 50; ++t) {
    const auto pair = random_separated_pair(rng, 3 + static_cast<std::int64_t>(rng.below(2)),
                                            1 + static_cast<std::int64_t>(rng.below(2)));
    const auto r = cz_pairing(pair.phi, pair.psi);
    worst = std::max(worst, std::abs(r.lhs - r.rhs) / std::max(std::abs(r.lhs), 1.0));
    largest = std::max(largest, std::abs(r.lhs));
  }
  return {fixed_err < kFixedPairingTol && worst < kPairingTol && largest > 0.0,
          fmt("fixed lhs %.17g", fixed.lhs) + fmt(" rhs %.17g", fixed.rhs) + fmt(", 50 random pairs worst %.2e", worst)};
}

// 8. Factorizations, coefficient for coefficient.
Outcome factorizations() {
  auto rng = SplitMix64::for_trial(kSeed, 8);
  std::uint64_t bad = 0;
  for (const double sv : {0.25, 0.5, 0.75}) {
    const FractionalOrder s(sv);
    for (int t = 0; t < 200; ++t) {
      const auto f = random_expansion(rng, {20, -4, 6, 64});
      const auto m = random_multiplier(rng, 64);
      const auto ds = frac_laplacian(f, s);
      bad += directional(f, s, m) != apply_multiplier(ds, m);
      std::set<std::uint64_t> positions{0, 63, 64};
      for (const auto& [key, c] : f) positions.insert(key.position);
      for (const auto i : positions) bad += partial(f, s, i) != project(ds, i);
      bad += gradient(f, s) != split_positions(ds);
    }
  }
  return {bad == 0, "600 inputs, " + std::to_string(bad) + " mismatches"};
}

// 9. Energy identity and the constant.
Outcome energy_identity() {
  auto rng = SplitMix64::for_trial(kSeed, 9);
  double worst = 0.0;
  for (const double sv : {0.25, 0.5, 0.75}) {
    const FractionalOrder s(sv);
    const double c = energy_constant(s);
    for (int t = 0; t < 100; ++t) {
      const auto f = random_expansion(rng, {20, -4, 6, 64});
      worst = std::max(worst, rel(energy_integral(f, s), c * spectral_energy(f, s)));
    }
  }
  const double c_half = oracle::energy(synthesize(HaarExpansion::single(0, 0)), 0.5);
  const double c_lib = energy_constant(FractionalOrder(0.5));
  double spread = 0.0;
  for (const double sv : {0.25, 0.5, 0.75}) {
    const FractionalOrder s(sv);
    const double c0 = energy_constant(s);
    for (const auto& key : {DyadicInterval{1, 0}, DyadicInterval{2, 3}, DyadicInterval{-2, 5}}) {
      const auto h = HaarExpansion::single(key.level, key.position);
      spread = std::max(spread, rel(energy_integral(h, s) / spectral_energy(h, s), c0));
      spread = std::max(spread, rel(oracle::energy(synthesize(h), sv) / spectral_energy(h, s), c0));
    }
  }
  const bool pass = worst < kEnergyTol && std::abs(c_half - 3.0) < kEnergyTol && std::abs(c_lib - 3.0) < kEnergyTol &&
                    spread < kEnergyTol;
  return {pass, fmt("300 expansions worst %.2e", worst) + fmt(", c(1/2) oracle %.15f", c_half) +
                    fmt(" library %.15f", c_lib) + fmt(", spread %.2e", spread)};
}

// 10. spectral = sum_i ||D^s_(i) f||^2.
Outcome gradient_identity() {
  auto rng = SplitMix64::for_trial(kSeed, 10);
  double worst = 0.0;
  for (const double sv : {0.25, 0.5, 0.75}) {
    const FractionalOrder s(sv);
    for (int t = 0; t < 100; ++t) {
      const auto f = random_expansion(rng, {20, -4, 6, 64});
      if (f.empty()) continue;
      double sum = 0.0;
      std::set<std::uint64_t> positions;
      for (const auto& [key, c] : f) positions.insert(key.position);
      for (const auto i : positions) sum += partial(f, s, i).norm2_squared();
      worst = std::max(worst, rel(sum, spectral_energy(f, s)));
      worst = std::max(worst, rel(gradient_energy(f, s), spectral_energy(f, s)));
    }
  }
  return {worst < kGradientTol, fmt("300 expansions worst %.2e", worst)};
}

// 11. Ratio sweep.
Outcome sweep() {
  SweepConfig cfg;
  cfg.seed = kSeed;
  cfg.trials = 500;
  const auto a = ratio_sweep(cfg);
  cfg.trials = 1000;
  const auto b = ratio_sweep(cfg);
  bool pass = true;
  std::string detail;
  for (std::size_t q = 0; q < a.per_p.size(); ++q) {
    const auto& ea = a.per_p[q];
    const auto& eb = b.per_p[q];
    if (ea.p == 2.0) {
      const double dev = std::max({std::abs(ea.max_ratio - 1.0), std::abs(ea.min_ratio - 1.0),
                                   std::abs(eb.max_ratio - 1.0), std::abs(eb.min_ratio - 1.0)});
      pass = pass && dev < kIsometryTol;
      detail += fmt("p=2 |R-1| %.1e; ", dev);
    } else {
      const double change = std::abs(eb.max_ratio - ea.max_ratio) / ea.max_ratio;
      pass = pass && std::isfinite(ea.max_ratio) && std::isfinite(eb.max_ratio) && change < kStabilityTol;
      detail += fmt("p=%g", ea.p) + fmt(" max %.4f", ea.max_ratio) + fmt("->%.4f; ", eb.max_ratio);
    }
  }
  auto rng = SplitMix64::for_trial(kSeed, 11);
  double dil = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto u = random_expansion(rng, cfg.shape);
    if (u.empty()) continue;
    const auto ra = lp_ratios(u, FractionalOrder(cfg.s), cfg.p_list);
    const auto rb = lp_ratios(dilate_expansion(u, 1 + static_cast<std::int64_t>(rng.below(3))), FractionalOrder(cfg.s),
                              cfg.p_list);
    for (std::size_t q = 0; q < ra.size(); ++q) dil = std::max(dil, rel(rb[q], ra[q]));
  }
  pass = pass && dil < kDilationTol;
  return {pass, detail + fmt("dilation %.1e", dil)};
}

bool same_report(const SuiteReport& a, const SuiteReport& b) {
  if (a.checks.size() != b.checks.size()) return false;
  for (std::size_t q = 0; q < a.checks.size(); ++q) {
    const auto& x = a.checks[q];
    const auto& y = b.checks[q];
    if (x.name != y.name || x.passed != y.passed || x.worst != y.worst || x.detail != y.detail) return false;
  }
  return true;
}

// 12. Full suite time and thread-count determinism.
Outcome full_suite() {
  SuiteOptions opt;
  opt.exec = Exec::serial;
  const auto reference = run_suite("all", opt);
  opt.exec = Exec::omp;
  bool same = true;
  double slowest = reference.seconds;
  for (const int threads : {1, 2, 4}) {
    set_threads(threads);
    const auto r = run_suite("all", opt);
    slowest = std::max(slowest, r.seconds);
    same = same && same_report(r, reference);
  }
  return {reference.passed() && same && slowest < kSuiteSeconds,
          std::to_string(reference.checks.size()) + " checks " + (reference.passed() ? "pass" : "FAIL") +
              fmt(", slowest run %.2f s", slowest) + (same ? ", identical for 1/2/4 threads" : ", THREAD-DEPENDENT")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"metric ultrametric and partition", metric},
      {"haar orthonormality, Parseval, round trip", haar},
      {"multiplier homogeneity", homogeneity},
      {"kernel formula vs direct series", kernel_formula},
      {"kernel size delta|K| <= 2", size_bound},
      {"kernel regularity", regularity},
      {"pairing representation", pairing},
      {"operator factorizations", factorizations},
      {"energy identity and constant", energy_identity},
      {"gradient energy", gradient_identity},
      {"L^p ratio sweep", sweep},
      {"full suite runtime and determinism", full_suite},
  };
  int failed = 0;
  for (std::size_t q = 0; q < criteria.size(); ++q) {
    Outcome o;
    try {
      o = criteria[q].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("AC%-2zu %s  %s: %s\n", q + 1, o.pass ? "PASS" : "FAIL", criteria[q].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
