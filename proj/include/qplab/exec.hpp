#pragma once

#include <cstddef>

namespace qplab {

/// Execution policy for grid sweeps and sampling loops. `parallel` uses
/// OpenMP when compiled in and is bitwise-identical to `serial`: every kernel
/// writes independent elements and all reductions run serially afterwards.
/// Thread count follows OMP_NUM_THREADS.
enum class Exec { serial, parallel };

template <typename Fn>
void for_each_index(Exec exec, std::ptrdiff_t n, Fn&& fn) {
#ifdef _OPENMP
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) fn(i);
    return;
  }
#else
  (void)exec;
#endif
  for (std::ptrdiff_t i = 0; i < n; ++i) fn(i);
}

}  // namespace qplab
