#include "dyadic/energy.hpp"
#include "dyadic/operators.hpp"
#include "dyadic/random.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace dyadic;

namespace {

HaarExpansion h(std::int64_t j, std::uint64_t k, double c = 1.0) { return HaarExpansion::single(j, k, c); }

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("energy of single wavelets") {
  const FractionalOrder half(0.5);
  CHECK(rel(energy_integral(h(0, 0), half), 3.0) < 1e-12);
  CHECK(rel(energy_integral(h(1, 0), half), 6.0) < 1e-12);
  CHECK(energy_integral(HaarExpansion{}, half) == 0.0);
  CHECK(rel(energy_constant(half), 3.0) < 1e-12);
  CHECK(rel(energy_constant(FractionalOrder(0.25)), 2.0 + 1.0 / (std::sqrt(2.0) - 1.0)) < 1e-12);
  for (const double s : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    const double c = 2.0 + 1.0 / (std::exp2(2.0 * s) - 1.0);
    CHECK(rel(energy_constant(FractionalOrder(s)), c) < 1e-12);
    CHECK(energy_constant_spread(FractionalOrder(s)) < 1e-12);
  }
}

TEST_CASE("spectral and gradient energy") {
  const FractionalOrder half(0.5);
  CHECK(spectral_energy(h(0, 0), half) == 1.0);
  CHECK(rel(spectral_energy(h(0, 0) + h(1, 1), half), 3.0) < 1e-15);
  CHECK(rel(gradient_energy(h(0, 0) + h(1, 1), half), 3.0) < 1e-15);
  CHECK(rel(gradient_energy(h(3, 5), FractionalOrder(0.25)), std::exp2(1.5)) < 1e-15);
  CHECK(rel(spectral_energy(dilate_expansion(h(2, 1) + h(-1, 4, 0.3)), half),
            2.0 * spectral_energy(h(2, 1) + h(-1, 4, 0.3), half)) < 1e-14);
}

TEST_CASE("butterfly pyramid agrees with the cell-pair oracle") {
  auto rng = SplitMix64(9);
  for (const double sv : {0.25, 0.5, 0.75}) {
    const FractionalOrder s(sv);
    for (int t = 0; t < 25; ++t) {
      const auto f = random_expansion(rng, {5, -1, 3, 4});
      if (f.empty()) continue;
      const double direct = oracle::energy(synthesize(f), sv);
      CHECK(rel(energy_integral(f, s), direct) < 1e-10);
    }
  }
}

TEST_CASE("energy identity, bilinear form and polarization") {
  auto rng = SplitMix64(13);
  for (const double sv : {0.25, 0.5, 0.75}) {
    const FractionalOrder s(sv);
    const double c = energy_constant(s);
    for (int t = 0; t < 30; ++t) {
      const auto f = random_expansion(rng, {20, -4, 6, 64});
      const auto g = f.scaled(rng.uniform(-1.0, 1.0)) + random_expansion(rng, {20, -4, 6, 64});
      CHECK(rel(energy_integral(f, s), c * spectral_energy(f, s)) < 1e-9);
      CHECK(rel(bilinear_energy(f, f, s), energy_integral(f, s)) < 1e-12);

      const double b = bilinear_energy(f, g, s);
      const double scale = std::max(std::abs(b), std::sqrt(energy_integral(f, s) * energy_integral(g, s)));
      const double polar = 0.25 * (energy_integral(f + g, s) - energy_integral(f - g, s));
      CHECK(std::abs(b - polar) / scale < 1e-10);

      double grad_pairing = 0.0;
      const auto gf = gradient(f, s);
      const auto gg = gradient(g, s);
      for (const auto& [i, comp] : gf.components) {
        for (const auto& [key, v] : comp) grad_pairing += v * gg.component(i).coeff(key);
      }
      CHECK(std::abs(b - c * grad_pairing) / scale < 1e-9);
    }
  }
}

TEST_CASE("serial and parallel energies are bit-identical") {
  auto rng = SplitMix64(17);
  const auto f = random_expansion(rng, {30, -4, 8, 64});
  const FractionalOrder s(0.4);
  const double serial = energy_integral(f, s, Exec::serial);
  for (const int threads : {1, 2, 3, 8}) {
    set_threads(threads);
    CHECK(energy_integral(f, s, Exec::omp) == serial);
  }
  set_threads(max_threads());
}
