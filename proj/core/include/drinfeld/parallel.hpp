#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace drinfeld {

/// Worker count used by parallel loops; 0 means hardware concurrency.
void set_default_jobs(unsigned jobs);
unsigned default_jobs();

/// True on threads started by parallel_for; nested loops run serially there.
inline bool& inside_parallel_worker() {
  thread_local bool inside = false;
  return inside;
}

/// Calls body(i) for every i in [0, n) from up to `jobs` threads. Results must
/// be written to per-index slots; the first exception is rethrown.
template <class Body>
void parallel_for(std::size_t n, Body&& body, unsigned jobs = default_jobs()) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, jobs), n));
  if (workers <= 1 || inside_parallel_worker()) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    const bool was_inside = inside_parallel_worker();
    inside_parallel_worker() = true;
    try {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      next = n;
    }
    inside_parallel_worker() = was_inside;
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace drinfeld
