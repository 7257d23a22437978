#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace prismcut {

// Worker count: hardware concurrency, capped by the PRISMCUT_THREADS env var.
inline int worker_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n <= 0) n = 1;
  if (const char* env = std::getenv("PRISMCUT_THREADS")) {
    int cap = std::atoi(env);
    if (cap >= 1) n = std::min(n, cap);
  }
  return n;
}

// Runs fn(begin..end) partitioned into contiguous chunks, one per worker.
// fn(lo, hi) must only write state owned by [lo, hi).
inline void parallel_for(std::size_t begin, std::size_t end,
                         const std::function<void(std::size_t, std::size_t)>& fn) {
  std::size_t count = end > begin ? end - begin : 0;
  int workers = worker_count();
  if (count == 0) return;
  if (workers <= 1 || count < 2) {
    fn(begin, end);
    return;
  }
  std::size_t chunk = (count + workers - 1) / workers;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    std::size_t lo = begin + chunk * w;
    if (lo >= end) break;
    std::size_t hi = std::min(end, lo + chunk);
    pool.emplace_back([lo, hi, &fn] { fn(lo, hi); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace prismcut
