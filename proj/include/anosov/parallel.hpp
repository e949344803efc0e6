#pragma once
// Contiguous-chunk worker pool. Callers merge per-chunk results in chunk order
// so that output never depends on the worker count.

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace anosov {

// jobs <= 0 reads ANOSOV_JOBS, then falls back to the hardware count.
inline int resolve_jobs(int jobs) {
  if (jobs > 0) return jobs;
  if (const char* env = std::getenv("ANOSOV_JOBS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Calls f(begin, end, chunk) on `chunks` contiguous pieces of [0, n).
template <class F>
void parallel_chunks(std::size_t n, int jobs, std::size_t chunks, F&& f) {
  if (n == 0 || chunks == 0) return;
  chunks = std::min(chunks, n);
  auto bounds = [&](std::size_t c) { return std::make_pair(n * c / chunks, n * (c + 1) / chunks); };
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(chunks)));
  if (jobs == 1) {
    for (std::size_t c = 0; c < chunks; ++c) {
      auto [b, e] = bounds(c);
      f(b, e, c);
    }
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
  for (int w = 0; w < jobs; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t c = static_cast<std::size_t>(w); c < chunks; c += static_cast<std::size_t>(jobs)) {
          auto [b, e] = bounds(c);
          f(b, e, c);
        }
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace anosov
