#pragma once
// Deterministic block parallelism. Work is cut into fixed-size blocks whose
// boundaries do not depend on the thread count; callers combine the per-block
// results in block order, so output bits never depend on EULER_ZETA_THREADS.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace ezeta {

// EULER_ZETA_THREADS sets the number of worker threads; 0 or unset means one per core.
inline unsigned thread_limit() {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("EULER_ZETA_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(std::min<long>(v, 256));
  }
  return hw;
}

// Runs fn(begin, end) for every block of [0, n) and returns the results in block order.
template <class T, class Fn>
std::vector<T> map_blocks(std::size_t n, std::size_t block, Fn&& fn) {
  const std::size_t blocks = n == 0 ? 0 : (n + block - 1) / block;
  std::vector<T> out(blocks);
  const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(thread_limit(), blocks));
  if (threads <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) out[b] = fn(b * block, std::min(n, (b + 1) * block));
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      for (std::size_t b; (b = next.fetch_add(1)) < blocks;) out[b] = fn(b * block, std::min(n, (b + 1) * block));
    });
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace ezeta
