#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace stellar {

// Worker count for whole-group sweeps.  0 means "use hardware concurrency".
void set_thread_count(int n);
int thread_count();

// Chunked parallel loop over [0, n).  Results must be written to
// caller-owned slots indexed by i so that output is schedule-independent.
template <class F>
void parallel_for(std::size_t n, F&& f) {
  int nt = thread_count();
  if (nt <= 1 || n < 64) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  const std::size_t chunk = 16;
  auto worker = [&] {
    for (;;) {
      std::size_t b = next.fetch_add(chunk);
      if (b >= n) return;
      std::size_t e = b + chunk < n ? b + chunk : n;
      for (std::size_t i = b; i < e; ++i) f(i);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(nt - 1);
  for (int t = 1; t < nt; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

}  // namespace stellar
