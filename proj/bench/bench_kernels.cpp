// Serial reference vs OpenMP timings for the data-parallel kernels.
//
//   bench_kernels [repeats]

#include "dyadic/energy.hpp"
#include "dyadic/harness.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

using namespace dyadic;

namespace {

double time_ms(const std::function<double()>& fn, int repeats, double& result) {
  const auto start = std::chrono::steady_clock::now();
  for (int r = 0; r < repeats; ++r) result = fn();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count() / repeats;
}

void compare(const std::string& name, const std::function<double(Exec)>& kernel, int repeats) {
  double serial_value = 0.0;
  double omp_value = 0.0;
  const double serial_ms = time_ms([&] { return kernel(Exec::serial); }, repeats, serial_value);
  const double omp_ms = time_ms([&] { return kernel(Exec::omp); }, repeats, omp_value);
  std::printf("%-28s serial %9.2f ms   omp %9.2f ms   speedup %5.2fx   %s\n", name.c_str(), serial_ms, omp_ms,
              serial_ms / omp_ms, serial_value == omp_value ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
  std::printf("threads: %d, repeats: %d\n", max_threads(), repeats);

  auto rng = SplitMix64(42);
  const auto f = random_expansion(rng, {40, -6, 14, 64});
  compare(
      "energy_integral (2^21 cells)",
      [&](Exec e) { return energy_integral(f, FractionalOrder(0.5), e); }, repeats);

  const auto pair = random_separated_pair(rng, 7, 3, 6);
  compare(
      "pairing rhs (2^10 cells)", [&](Exec e) { return cz_pairing(pair.phi, pair.psi, e).rhs; }, repeats);

  CzConfig cz;
  cz.trials = 20000;
  compare(
      "cz hypotheses (2e4 trials)", [&](Exec e) { return check_cz_hypotheses(cz, e).max_delta_knorm; }, repeats);

  SweepConfig sweep;
  sweep.trials = 2000;
  compare(
      "ratio sweep (2000 trials)", [&](Exec e) { return ratio_sweep(sweep, e).per_p.front().max_ratio; }, repeats);
  return 0;
}
