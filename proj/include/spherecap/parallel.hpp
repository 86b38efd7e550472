#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace spherecap {

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Runs body(i) for i in [0, n). Parallel iterations must write disjoint slots
// so the serial and parallel variants produce bitwise-identical results.
template <class F>
void parallel_for(int n, bool parallel, F &&body) {
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) body(i);
  } else {
    for (int i = 0; i < n; ++i) body(i);
  }
}

} // namespace spherecap
