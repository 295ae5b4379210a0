#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace seqlevy {

/// Runs f(i) for i in [0, n) on up to `threads` workers over contiguous
/// index blocks. Results must be written to per-index slots; any reduction
/// over them has to happen afterwards in index order, which keeps outputs
/// independent of the thread count.
template <class F>
void parallel_for(std::size_t n, std::size_t threads, F&& f) {
  if (n == 0) return;
  if (threads <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  const std::size_t workers = std::min(threads, n);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi, w] {
      try {
        for (std::size_t i = lo; i < hi; ++i) f(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace seqlevy
