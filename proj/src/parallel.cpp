#include "onslab/parallel.hpp"

#include <atomic>

namespace onslab::parallel {

namespace {
std::atomic<bool> g_enabled{true};
}

bool enabled() { return g_enabled.load(std::memory_order_relaxed); }
void setEnabled(bool on) { g_enabled.store(on, std::memory_order_relaxed); }

int maxThreads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace onslab::parallel
