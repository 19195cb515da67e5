#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

namespace matfun::par {

// Runtime switch for the OpenMP kernels. Defaults to on when the library was
// built with OpenMP. The serial path is the reference implementation; both
// produce bit-identical results because reductions always run serially in
// index order over per-slot values.
bool openmp_built();
int max_threads();
void set_enabled(bool on);
bool enabled();

namespace detail {
void run_indexed(std::ptrdiff_t n, void* ctx, void (*body)(void*, std::ptrdiff_t));
}

// out[i] = fn(i) for i in [0, n). Parallel when enabled; exceptions from fn
// are captured and rethrown on the calling thread.
template <class T, class Fn>
void map_index(std::span<T> out, Fn&& fn) {
  struct Ctx {
    std::span<T>& out;
    Fn& fn;
  } ctx{out, fn};
  detail::run_indexed(
      static_cast<std::ptrdiff_t>(out.size()), &ctx,
      [](void* p, std::ptrdiff_t i) {
        auto& c = *static_cast<Ctx*>(p);
        c.out[static_cast<std::size_t>(i)] = c.fn(i);
      });
}

// Ordered block map-reduce: evaluates value(i) for i in [0, n) in blocks,
// filling each block in parallel, then accumulates serially in index order
// via accumulate(acc, value). Memory stays bounded by block_size values.
template <class T, class ValueFn, class AccFn>
void blocked_reduce(std::ptrdiff_t n, std::ptrdiff_t block_size, T& acc,
                    ValueFn&& value, AccFn&& accumulate) {
  std::vector<T> block(static_cast<std::size_t>(std::min(n, block_size)));
  for (std::ptrdiff_t start = 0; start < n; start += block_size) {
    const std::ptrdiff_t len = std::min(block_size, n - start);
    map_index(std::span<T>(block.data(), static_cast<std::size_t>(len)),
              [&](std::ptrdiff_t i) { return value(start + i); });
    for (std::ptrdiff_t i = 0; i < len; ++i) {
      accumulate(acc, block[static_cast<std::size_t>(i)]);
    }
  }
}

}  // namespace matfun::par
