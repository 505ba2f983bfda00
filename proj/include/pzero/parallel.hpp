#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace pzero {

inline unsigned hardware_threads() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1u : n;
}

// Runs fn(i) for every i in [begin, end) on up to `threads` workers.
// Each index is claimed exactly once; fn may only touch state owned by
// its index, so results are identical at any thread count.
template <typename Fn>
void parallel_for(std::size_t begin, std::size_t end, unsigned threads, Fn&& fn) {
  if (begin >= end) return;
  const std::size_t count = end - begin;
  if (threads == 0) threads = hardware_threads();
  if (threads <= 1 || count == 1) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
    return;
  }

  const unsigned workers =
      static_cast<unsigned>(count < threads ? count : static_cast<std::size_t>(threads));
  std::atomic<std::size_t> next{begin};
  std::exception_ptr error;
  std::mutex error_mutex;

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (std::size_t i = next.fetch_add(1); i < end; i = next.fetch_add(1)) {
          fn(i);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(end);  // drain remaining work
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace pzero
