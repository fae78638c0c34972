#pragma once

#include <algorithm>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rmix {

// Process-wide cap on worker threads (CLI --threads). 0 = library default.
void set_max_threads(int n);
int max_threads();

// Runs body(i) for i in [0,n). Each index writes only its own slots, so the
// result is independent of the thread count. Reductions must be done by the
// caller in index order afterwards.
template <typename Body>
void parallel_for(std::int64_t n, const Body& body) {
#ifdef _OPENMP
  const int threads = std::max(1, std::min(max_threads(), omp_get_max_threads()));
  if (threads > 1 && n > 1) {
#pragma omp parallel for schedule(static) num_threads(threads)
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
#endif
  for (std::int64_t i = 0; i < n; ++i) body(i);
}

// Serial twin, kept as the reference implementation for tests and benchmarks.
template <typename Body>
void serial_for(std::int64_t n, const Body& body) {
  for (std::int64_t i = 0; i < n; ++i) body(i);
}

}  // namespace rmix
