#ifndef NBLAB_PARALLEL_HPP
#define NBLAB_PARALLEL_HPP

#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace nblab {

// Worker count: NBLAB_WORKERS env var when set, otherwise the hardware
// concurrency clamped to [1, 16].
inline int worker_count() {
  if (const char* env = std::getenv("NBLAB_WORKERS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::min(16u, std::max(1u, hw)));
}

// Runs fn(i) for i in [0, count) on a pool. Tasks own their state; the first
// exception is rethrown after the pool drains.
inline void parallel_for(int count, const std::function<void(int)>& fn,
                         int workers = worker_count()) {
  if (count <= 0) return;
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    while (true) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace nblab

#endif  // NBLAB_PARALLEL_HPP
