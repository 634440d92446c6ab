#pragma once

// Minimal fork-join helper. Work is split into contiguous chunks that write
// disjoint outputs, so results never depend on the thread count; reductions
// are left to the caller in canonical index order. Nested calls run serially.

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace grs {

inline unsigned max_threads() {
  if (const char* env = std::getenv("GRS_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(std::min(v, 64L));
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

namespace detail {
inline thread_local bool in_parallel = false;
}

// fn(begin, end) over a partition of [0, n).
inline void parallel_for(std::size_t n,
                         const std::function<void(std::size_t, std::size_t)>& fn) {
  if (n == 0) return;
  const unsigned want = std::min<std::size_t>(max_threads(), n);
  if (want <= 1 || detail::in_parallel) {
    fn(0, n);
    return;
  }
  const std::size_t chunk = (n + want - 1) / want;
  std::vector<std::thread> workers;
  workers.reserve(want);
  for (unsigned t = 0; t < want; ++t) {
    const std::size_t begin = t * chunk;
    if (begin >= n) break;
    const std::size_t end = std::min(n, begin + chunk);
    workers.emplace_back([&fn, begin, end] {
      detail::in_parallel = true;
      fn(begin, end);
      detail::in_parallel = false;
    });
  }
  for (auto& w : workers) w.join();
}

}  // namespace grs
