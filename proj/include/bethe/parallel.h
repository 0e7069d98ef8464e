#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bethe {

// Worker count: an explicit positive request wins, otherwise the hardware.
inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(item, worker) for item in [0, n) on a pool of workers. make_state
// is called once per worker, so per-worker caches never cross threads. The
// first exception thrown by any item is rethrown after all workers join.
template <class MakeState, class Fn>
void parallel_for(std::size_t n, int threads, MakeState&& make_state, Fn&& fn) {
  const int workers = std::max(1, std::min<int>(resolve_threads(threads), static_cast<int>(std::max<std::size_t>(n, 1))));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&]() {
    try {
      auto state = make_state();
      for (std::size_t i = next++; i < n; i = next++) fn(i, state);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
      next = n;
    }
  };
  if (workers == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace bethe
