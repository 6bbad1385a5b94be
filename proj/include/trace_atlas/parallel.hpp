#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace trace_atlas {

// Worker cap.  TRACE_ATLAS_THREADS=k overrides hardware_concurrency.
inline unsigned thread_budget() {
  if (const char* s = std::getenv("TRACE_ATLAS_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end != s && *end == '\0' && v >= 1 && v <= 4096) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// Splits [0, n) into fixed blocks, maps each block to an R, and returns the
// per-block results in block order.  Callers reduce sequentially over the
// returned vector, so the final value does not depend on the thread count.
template <class R, class Map>
std::vector<R> map_blocks(std::size_t n, std::size_t block, Map map) {
  if (block == 0) block = 1;
  const std::size_t nblocks = n == 0 ? 0 : (n + block - 1) / block;
  std::vector<R> out(nblocks);
  const unsigned threads =
      std::min<std::size_t>(thread_budget(), nblocks == 0 ? 1 : nblocks);
  if (threads <= 1) {
    for (std::size_t b = 0; b < nblocks; ++b)
      out[b] = map(b * block, std::min(n, (b + 1) * block));
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    try {
      for (;;) {
        std::size_t b = next.fetch_add(1);
        if (b >= nblocks) break;
        out[b] = map(b * block, std::min(n, (b + 1) * block));
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mu);
      if (!failure) failure = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace trace_atlas
