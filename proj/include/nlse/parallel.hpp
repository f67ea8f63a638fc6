#pragma once

#include <cstddef>
#include <cstdint>

namespace nlse {

/// Execution policy for the data-parallel kernels.  Every parallel driver
/// has a serial twin used as the reference in tests; results are written
/// into preassigned slots so both paths produce bit-identical output.
enum class Exec { serial, parallel };

/// Worker count for Exec::parallel.  Resolution order: explicit
/// set_worker_count(), RWLAB_THREADS environment variable, OpenMP default.
int worker_count();
void set_worker_count(int n);

namespace detail {
void parallel_for_impl(Exec exec, std::size_t n, void (*body)(std::size_t, void*), void* ctx);
}

/// body(i) for i in [0, n).  Iterations must be independent; any write
/// pattern keyed on i alone is deterministic under both policies.
template <class F>
void parallel_for(Exec exec, std::size_t n, F&& body) {
  auto trampoline = [](std::size_t i, void* ctx) { (*static_cast<F*>(ctx))(i); };
  detail::parallel_for_impl(exec, n, trampoline, &body);
}

}  // namespace nlse
