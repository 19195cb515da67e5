#include "matfun/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace matfun::par {

namespace {
std::atomic<bool> g_enabled{
#ifdef _OPENMP
    true
#else
    false
#endif
};
}  // namespace

bool openmp_built() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_enabled(bool on) { g_enabled.store(on, std::memory_order_relaxed); }

bool enabled() { return g_enabled.load(std::memory_order_relaxed); }

namespace detail {

void run_indexed(std::ptrdiff_t n, void* ctx, void (*body)(void*, std::ptrdiff_t)) {
#ifdef _OPENMP
  if (enabled() && n > 1 && omp_get_max_threads() > 1 && !omp_in_parallel()) {
    std::exception_ptr first_error;
    std::mutex error_mutex;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      try {
        body(ctx, i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
    if (first_error) std::rethrow_exception(first_error);
    return;
  }
#endif
  for (std::ptrdiff_t i = 0; i < n; ++i) body(ctx, i);
}

}  // namespace detail

}  // namespace matfun::par
