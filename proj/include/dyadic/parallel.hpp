#pragma once

// Execution policy shared by the data-parallel kernels. Every kernel has a
// serial reference and an OpenMP variant; both reduce over fixed-size blocks
// in block order, so results are bit-identical for any thread count.

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dyadic {

enum class Exec { serial, omp };

inline constexpr std::size_t kReduceBlock = 1024;

/// Sum of term(i) for i in [0, n), accumulated per block of kReduceBlock
/// indices and then across blocks in order.
template <class Term>
double ordered_sum(std::size_t n, Term&& term, Exec exec) {
  const std::size_t blocks = (n + kReduceBlock - 1) / kReduceBlock;
  std::vector<double> partial(blocks, 0.0);
  const auto run_block = [&](std::size_t b) {
    const std::size_t end = (b + 1) * kReduceBlock < n ? (b + 1) * kReduceBlock : n;
    double acc = 0.0;
    for (std::size_t i = b * kReduceBlock; i < end; ++i) acc += term(i);
    partial[b] = acc;
  };
  if (exec == Exec::omp) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(blocks); ++b) run_block(static_cast<std::size_t>(b));
  } else {
    for (std::size_t b = 0; b < blocks; ++b) run_block(b);
  }
  double total = 0.0;
  for (const double p : partial) total += p;
  return total;
}

/// out[i] = fn(i) for i in [0, n).
template <class T, class Fn>
void parallel_fill(std::vector<T>& out, Fn&& fn, Exec exec) {
  if (exec == Exec::omp) {
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(out.size()); ++i) {
      out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
    }
  } else {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = fn(i);
  }
}

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

}  // namespace dyadic
