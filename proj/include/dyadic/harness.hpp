#pragma once

// Verification harness: L^p norms of step functions, the off-diagonal pairing
// <T phi, psi> = \iint <K(x,y) phi(y), psi(x)> dx dy, the randomized checks of
// the kernel size and regularity conditions, and the L^p ratio sweep
//
//   R_p(u) = || |grad^s u|_l2 ||_p / || D^s u ||_p.

#include "dyadic/energy.hpp"
#include "dyadic/multiplier.hpp"
#include "dyadic/operators.hpp"
#include "dyadic/parallel.hpp"
#include "dyadic/random.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dyadic {

/// (sum |v|^p |cell|)^{1/p}. Throws InvalidP for p < 1.
double lp_norm(const StepFunction& g, double p);
/// L^p norm of the pointwise l2 modulus of components sharing one grid.
double lp_norm_modulus(std::span<const StepFunction> components, double p);

/// delta * sum_{I >= I(x,y)} m(I) h_I(x) h_I(y), walking the ancestors one by
/// one until the position reaches 0 and closing the remaining geometric tail.
Dyadic omega_series(const Multiplier& m, const DyadicPoint& x, const DyadicPoint& y);

// ---------------------------------------------------------------------------
// Pairing

struct PairingResult {
  double lhs = 0.0;  // sum_i <T_(i) phi, psi_i> from coefficients
  double rhs = 0.0;  // cellwise double sum against the kernel
};

/// psi_i may carry keys at any position. Throws SupportsNotSeparated when a
/// grid cell carries both phi and some psi_i.
PairingResult cz_pairing(const HaarExpansion& phi, const GradientField& psi, Exec exec = Exec::omp);

struct SeparatedPair {
  HaarExpansion phi;
  GradientField psi;
};

/// Random mean-zero step functions on disjoint random unions of level-`grid`
/// cells of [0, 2^window), returned as exact Haar expansions.
SeparatedPair random_separated_pair(SplitMix64& rng, std::int64_t grid_level = 3, std::int64_t window = 2,
                                    int components = 4);

// ---------------------------------------------------------------------------
// Kernel hypotheses

struct CzConfig {
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  PointShape points;
  unsigned extra_bits = 8;  // resolution of x', y' below the level of I(x,y)
};

struct CzReport {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double c0_witness = 2.0;        // certified size constant
  double max_delta_knorm = 0.0;   // max delta(x,y) |K(x,y)|_l2 observed
  std::uint64_t size_violations = 0;
  std::uint64_t regularity_checks = 0;
  std::uint64_t regularity_violations = 0;
  double c1 = 0.0;                // K(x',y) - K(x,y) vanishes identically
  std::string worst_x;
  std::string worst_y;

  bool passed() const { return size_violations == 0 && regularity_violations == 0; }
  friend bool operator==(const CzReport&, const CzReport&) = default;
};

/// Throws Error when trials == 0.
CzReport check_cz_hypotheses(const CzConfig& config, Exec exec = Exec::omp);

// ---------------------------------------------------------------------------
// Ratio sweep

struct SweepConfig {
  double s = 0.5;
  std::vector<double> p_list{1.5, 2.0, 3.0, 4.0};
  std::uint64_t trials = 500;
  std::uint64_t seed = 1;
  ExpansionShape shape;
};

struct SweepEntry {
  double p = 0.0;
  double max_ratio = 0.0;
  double min_ratio = 0.0;
  double mean_ratio = 0.0;
  std::uint64_t argmax_index = 0;
  friend bool operator==(const SweepEntry&, const SweepEntry&) = default;
};

struct SweepReport {
  double s = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<SweepEntry> per_p;
  friend bool operator==(const SweepReport&, const SweepReport&) = default;
};

/// R_p(u) for every p in p_list. Throws InvalidP unless every p > 1.
std::vector<double> lp_ratios(const HaarExpansion& u, FractionalOrder s, std::span<const double> p_list);

SweepReport ratio_sweep(const SweepConfig& config, Exec exec = Exec::omp);

// ---------------------------------------------------------------------------
// Property suites

struct CheckResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;  // worst error or bound margin seen
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  double seconds = 0.0;

  bool passed() const;
};

struct SuiteOptions {
  std::uint64_t seed = 20240601;
  Exec exec = Exec::omp;
};

/// metric, haar, multiplier, kernel, operators, energy, cz, sweep or all.
/// Throws UnknownSuite otherwise.
SuiteReport run_suite(const std::string& name, const SuiteOptions& options = {});

const std::vector<std::string>& suite_names();

}  // namespace dyadic
