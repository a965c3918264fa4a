#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace qaoa2 {

/// Runs f(i) for every i in [0, n) on a small worker pool. Callers write
/// results into per-index slots, so scheduling order never matters. If any
/// calls throw, the lowest-index exception is rethrown after all workers
/// finish, making failures deterministic too.
template <typename F>
void parallel_for(std::size_t n, F&& f, unsigned max_threads = 0) {
  if (n == 0) return;
  const unsigned hw = std::thread::hardware_concurrency();
  unsigned nthreads = max_threads ? max_threads : (hw ? hw : 1);
  if (std::size_t(nthreads) > n) nthreads = unsigned(n);

  std::vector<std::exception_ptr> errs(n);
  if (nthreads <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        f(i);
      } catch (...) {
        errs[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          f(i);
        } catch (...) {
          errs[i] = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

}  // namespace qaoa2
