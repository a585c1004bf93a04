#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace tmlab {

// Runs f(i) for i in [0, n). Results must be written to slot i by the caller,
// so the outcome does not depend on scheduling. The exception of the lowest
// failing index is rethrown.
template <class F>
void parallel_for(std::size_t n, F&& f) {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  std::size_t nt = std::min<std::size_t>(hw, n);
  if (nt <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::exception_ptr> errs(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        f(i);
      } catch (...) {
        errs[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t k = 0; k < nt; ++k) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

}  // namespace tmlab
