#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace tpair::detail {

// worker count: TRAPPED_PAIR_THREADS, 0 or unset -> hardware concurrency
inline int thread_count(std::size_t n_tasks) {
  int n = 0;
  if (const char* s = std::getenv("TRAPPED_PAIR_THREADS")) n = std::atoi(s);
  if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
  n = std::clamp(n, 1, 64);
  return static_cast<int>(
      std::min<std::size_t>(n, std::max<std::size_t>(n_tasks, 1)));
}

// run task(i) for i in [0, n_tasks) over a shared-counter worker pool
template <class Task>
void run_parallel(std::size_t n_tasks, Task&& task) {
  if (n_tasks == 0) return;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t t = next.fetch_add(1);
      if (t >= n_tasks) return;
      task(t);
    }
  };
  int nt = thread_count(n_tasks);
  if (nt <= 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(nt));
  for (int i = 0; i < nt; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace tpair::detail
