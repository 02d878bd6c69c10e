#ifndef MOVEPRINT_PARALLEL_HPP
#define MOVEPRINT_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace moveprint {

// Runs fn(begin, end) over [0,n) split into fixed-size chunks. The chunk grid
// depends only on n and chunk_size, never on the worker count, so callers can
// reduce per-chunk results in index order and stay deterministic at any
// parallelism level. workers == 0 picks hardware_concurrency.
inline void parallel_for_chunks(std::size_t n, std::size_t chunk_size,
                                const std::function<void(std::size_t, std::size_t)>& fn,
                                unsigned workers = 0) {
  if (n == 0) return;
  if (chunk_size == 0) chunk_size = 1;
  const std::size_t n_chunks = (n + chunk_size - 1) / chunk_size;

  if (workers == 0) {
    workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
  }
  if (workers > n_chunks) workers = static_cast<unsigned>(n_chunks);

  if (workers <= 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) {
      const std::size_t begin = c * chunk_size;
      const std::size_t end = begin + chunk_size < n ? begin + chunk_size : n;
      fn(begin, end);
    }
    return;
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= n_chunks) return;
      const std::size_t begin = c * chunk_size;
      const std::size_t end = begin + chunk_size < n ? begin + chunk_size : n;
      fn(begin, end);
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

}  // namespace moveprint

#endif  // MOVEPRINT_PARALLEL_HPP
