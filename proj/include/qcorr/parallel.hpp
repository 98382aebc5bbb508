#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace qcorr {

// Runs fn(i) for i in [0, n) on up to `workers` threads. Each index writes
// only its own output slot, so results are independent of scheduling.
// workers <= 0 means hardware concurrency.
template <typename Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
  std::size_t nw = workers > 0 ? static_cast<std::size_t>(workers)
                               : std::max(1u, std::thread::hardware_concurrency());
  nw = std::min(nw, n);
  if (nw <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(nw);
  std::vector<std::thread> pool;
  pool.reserve(nw);
  for (std::size_t w = 0; w < nw; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < n; i = next++) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace qcorr
