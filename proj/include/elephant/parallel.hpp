#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace elephant {

/// Worker count: hardware concurrency, capped by ELEPHANT_LAB_THREADS.
inline unsigned max_threads() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ELEPHANT_LAB_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

/// Runs body(begin, end, worker_index) over a partition of [0, count).
/// Each replica must derive its randomness from its own index, so the
/// result is identical for any worker count.
template <class Body>
void parallel_for_replicas(std::uint64_t count, Body&& body) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(max_threads(), std::max<std::uint64_t>(count, 1)));
  if (workers <= 1 || count == 0) {
    body(std::uint64_t{0}, count, 0u);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::uint64_t chunk = (count + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = w * chunk;
    const std::uint64_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&body, begin, end, w] { body(begin, end, w); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace elephant
