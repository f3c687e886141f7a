#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace unitfrac::detail {

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1U, std::thread::hardware_concurrency());
}

// Runs fn(task) for task in [0, num_tasks) on up to `threads` workers with a
// static strided assignment and returns the per-task results in task order.
template <typename Result, typename Fn>
std::vector<Result> run_tasks(std::size_t num_tasks, unsigned threads, Fn&& fn) {
  std::vector<Result> results(num_tasks);
  const std::size_t workers = std::min<std::size_t>(resolve_threads(threads), num_tasks);
  if (workers <= 1) {
    for (std::size_t t = 0; t < num_tasks; ++t) results[t] = fn(t);
    return results;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t t = w; t < num_tasks; t += workers) results[t] = fn(t);
    });
  }
  pool.clear();
  return results;
}

}  // namespace unitfrac::detail
