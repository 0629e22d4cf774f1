#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace repzeta {

/// Number of workers used when a caller passes 0.
inline unsigned default_threads() noexcept { return std::max(1u, std::thread::hardware_concurrency()); }

/// Runs body(begin, end, worker) over contiguous chunks of [0, n). Each worker
/// owns its chunk, so callers accumulate into per-worker buffers and merge.
template <class Body>
void parallel_chunks(std::size_t n, unsigned threads, Body&& body) {
  if (threads == 0) threads = default_threads();
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    body(std::size_t{0}, n, 0u);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(threads);
  const std::size_t step = (n + threads - 1) / threads;
  for (unsigned w = 0; w < threads; ++w) {
    const std::size_t begin = std::min(n, w * step), end = std::min(n, begin + step);
    workers.emplace_back([&body, begin, end, w] { body(begin, end, w); });
  }
  for (auto& t : workers) t.join();
}

}  // namespace repzeta
