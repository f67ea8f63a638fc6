#include "nlse/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nlse {

namespace {
int g_workers = 0;  // 0 = unset, fall back to env / OpenMP default
}

void set_worker_count(int n) { g_workers = n > 0 ? n : 0; }

int worker_count() {
  if (g_workers > 0) return g_workers;
  if (const char* env = std::getenv("RWLAB_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace detail {

void parallel_for_impl(Exec exec, std::size_t n, void (*body)(std::size_t, void*), void* ctx) {
#ifdef _OPENMP
  if (exec == Exec::parallel && n > 1) {
    // Exceptions may not unwind out of an OpenMP region; capture the first
    // one and rethrow after the join.
    std::exception_ptr first;
    std::atomic<bool> failed{false};
#pragma omp parallel for schedule(dynamic) num_threads(worker_count())
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      if (failed.load(std::memory_order_relaxed)) continue;
      try {
        body(static_cast<std::size_t>(i), ctx);
      } catch (...) {
        bool expected = false;
        if (failed.compare_exchange_strong(expected, true)) first = std::current_exception();
      }
    }
    if (first) std::rethrow_exception(first);
    return;
  }
#else
  (void)exec;
#endif
  for (std::size_t i = 0; i < n; ++i) body(i, ctx);
}

}  // namespace detail
}  // namespace nlse
