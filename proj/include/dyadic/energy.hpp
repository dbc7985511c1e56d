#pragma once

// The nonlocal energy
//
//   E_s(f) = \iint |f(x) - f(y)|^2 delta(x,y)^{-2s} dx dy / delta(x,y)
//
// evaluated exactly for step functions. Off the diagonal the plane splits into
// butterflies B(I) = I+ x I- u I- x I+, on which delta = |I|. Over one
// butterfly the integral only needs the half-interval moments int f, int g,
// int fg, so a pyramid over the grid gives every near-field term, and the
// butterflies of [0, 2^l) above the window sum to a geometric series.

#include "dyadic/haar.hpp"
#include "dyadic/operators.hpp"
#include "dyadic/parallel.hpp"

namespace dyadic {

struct EnergyReport {
  double s = 0.0;
  double integral = 0.0;
  double spectral = 0.0;
  double gradient = 0.0;
  double constant = 0.0;
};

/// Bilinear form on two step functions; they are refined to a common grid.
double bilinear_energy_step(const StepFunction& f, const StepFunction& g, FractionalOrder s,
                            Exec exec = Exec::omp);

double energy_integral(const HaarExpansion& f, FractionalOrder s, Exec exec = Exec::omp);
double bilinear_energy(const HaarExpansion& f, const HaarExpansion& g, FractionalOrder s,
                       Exec exec = Exec::omp);

/// sum_I c_I^2 |I|^{-2s}.
double spectral_energy(const HaarExpansion& f, FractionalOrder s);
/// sum_i ||D^s_(i) f||_2^2.
double gradient_energy(const HaarExpansion& f, FractionalOrder s);

/// c(s) = E_s(h^0_0) / spectral(h^0_0), measured.
double energy_constant(FractionalOrder s);
/// Largest relative spread of E_s(h) / spectral(h) over h^0_0, h^1_0, h^2_3.
double energy_constant_spread(FractionalOrder s);

EnergyReport energy_report(const HaarExpansion& f, FractionalOrder s);

}  // namespace dyadic
