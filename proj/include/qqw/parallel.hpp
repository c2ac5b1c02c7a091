#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace qqw {

// Runs body(0..trials-1) across `jobs` workers. Bodies must write only to
// per-index slots; combined with per-trial rng children this keeps results
// independent of the job count.
inline void run_trials(std::size_t trials, std::size_t jobs,
                       const std::function<void(std::size_t)>& body) {
  if (jobs <= 1) {
    for (std::size_t i = 0; i < trials; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  for (std::size_t w = 0; w < jobs && w < trials; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= trials) return;
        body(i);
      }
    });
  for (auto& th : pool) th.join();
}

}  // namespace qqw
