#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace halfspace {

/// Worker-pool width: hardware concurrency, capped by HALFSPACE_THREADS.
inline int thread_budget() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("HALFSPACE_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1 && cap < n) n = cap;
  }
  return n;
}

/// Runs f(i) for i in [0, n) on a pool. Tasks must write results into
/// caller-owned slots indexed by i so output order is deterministic.
template <class F>
void parallel_for_indexed(int n, F&& f) {
  const int workers = std::min(thread_budget(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) f(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace halfspace
