#pragma once

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace autg {

// Thread count resolution: 0 means the OpenMP default, 1 forces the serial
// path. Kernels built on parallel_for stay available (serially) in builds
// without OpenMP.
inline int resolve_threads(int threads) {
#ifdef _OPENMP
  return threads == 0 ? omp_get_max_threads() : threads;
#else
  (void)threads;
  return 1;
#endif
}

template <typename Fn>
void parallel_for(int64_t n, int threads, Fn&& fn) {
  int t = resolve_threads(threads);
  if (t <= 1) {
    for (int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) num_threads(t)
  for (int64_t i = 0; i < n; ++i) fn(i);
#else
  for (int64_t i = 0; i < n; ++i) fn(i);
#endif
}

}  // namespace autg
