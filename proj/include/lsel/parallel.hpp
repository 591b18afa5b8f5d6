#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace lsel {

/// Runs fn(i) for i in [0, count) on at most `workers` threads. Results must
/// be written to per-index slots; any exception is rethrown after joining.
template <class Fn>
void parallel_for(long count, int workers, Fn&& fn) {
  if (workers <= 1 || count <= 1) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (long i; (i = next.fetch_add(1)) < count;) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  const int nt = static_cast<int>(std::min<long>(workers, count));
  for (int t = 0; t < nt; ++t) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace lsel
