#pragma once

// Deterministic work partitioning: results land in pre-sized slots indexed by
// candidate number, so the merged output is independent of the schedule.

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace hopfkit {

inline int default_jobs() {
  if (const char* env = std::getenv("HOPFKIT_JOBS")) {
    int j = std::atoi(env);
    if (j >= 1) return j;
  }
  return 1;
}

template <class Fn>
void parallel_for(size_t n, int jobs, Fn&& fn) {
  if (jobs <= 1 || n < 2) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  size_t workers = std::min<size_t>(static_cast<size_t>(jobs), n);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w]() {
      for (size_t i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : threads) t.join();
}

}  // namespace hopfkit
