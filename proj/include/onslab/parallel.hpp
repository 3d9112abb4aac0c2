#pragma once

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace onslab::parallel {

// Process-wide switch between the OpenMP kernels and the serial reference
// path. Work is always split into the same fixed chunks and reduced in index
// order, so both paths produce bit-identical results; the tests and the
// bench tool rely on that.
bool enabled();
void setEnabled(bool on);
int maxThreads();

template <class F>
void forIndex(std::int64_t count, F&& body) {
  if (enabled()) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
#endif
  }
  for (std::int64_t i = 0; i < count; ++i) body(i);
}

}  // namespace onslab::parallel
