#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace erbm {

/// Splits [0, n) into fixed-size chunks, runs `body(begin, end, chunk_index,
/// acc)` on worker threads (one fresh Acc per chunk) and merges the chunk
/// accumulators in chunk order. The result is identical for any job count:
/// the chunk partition and the merge order never depend on scheduling.
template <class Acc, class Body, class Merge>
Acc chunked_reduce(std::size_t n, std::size_t chunk_size, int jobs,
                   const Acc& zero, Body body, Merge merge) {
  if (chunk_size == 0) chunk_size = 1;
  std::size_t n_chunks = (n + chunk_size - 1) / chunk_size;
  if (jobs < 1) jobs = 1;
  std::vector<Acc> parts(n_chunks, zero);
  if (jobs == 1 || n_chunks <= 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) {
      std::size_t b = c * chunk_size;
      std::size_t e = std::min(n, b + chunk_size);
      body(b, e, c, parts[c]);
    }
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      for (;;) {
        std::size_t c = next.fetch_add(1);
        if (c >= n_chunks) return;
        std::size_t b = c * chunk_size;
        std::size_t e = std::min(n, b + chunk_size);
        body(b, e, c, parts[c]);
      }
    };
    std::vector<std::thread> pool;
    int nt = std::min<std::size_t>(jobs, n_chunks);
    pool.reserve(nt);
    for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  Acc total = zero;
  for (std::size_t c = 0; c < n_chunks; ++c) merge(total, parts[c]);
  return total;
}

inline int default_jobs() {
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

}  // namespace erbm
