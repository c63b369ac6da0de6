#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace metarl {

// Number of worker threads: METARL_THREADS env var if set, else hardware
// concurrency. A value of 1 disables threading entirely.
inline int default_thread_count() {
  if (const char* env = std::getenv("METARL_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// Runs fn(0..n-1), optionally across threads. Work items must be independent;
// callers own deterministic aggregation of the results (fixed-order reduce
// after the join), so outputs do not depend on the schedule.
inline void parallel_for(int n, int n_threads, const std::function<void(int)>& fn) {
  n_threads = std::max(1, std::min(n_threads, n));
  if (n_threads == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(static_cast<size_t>(n_threads));
  workers.reserve(static_cast<size_t>(n_threads));
  for (int w = 0; w < n_threads; ++w) {
    workers.emplace_back([&, w]() {
      try {
        for (int i = w; i < n; i += n_threads) fn(i);
      } catch (...) {
        errors[static_cast<size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace metarl
