#ifndef DEGEN_PARALLEL_HPP
#define DEGEN_PARALLEL_HPP

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace degen {

/// Worker cap: DEGEN_CALC_THREADS when set, otherwise the hardware count.
inline std::size_t thread_cap() {
  if (const char* env = std::getenv("DEGEN_CALC_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<std::size_t>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Runs fn(begin, end) over a fixed partition of [0, count). The partition
/// depends only on count and the cap, so writes into caller-owned slots
/// stay deterministic.
inline void parallel_chunks(std::size_t count,
                            const std::function<void(std::size_t, std::size_t)>& fn) {
  const std::size_t workers = std::min(thread_cap(), std::max<std::size_t>(count, 1));
  if (workers <= 1 || count < 2) {
    fn(0, count);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace degen

#endif
