#pragma once

// Seed-range partitioning across worker threads with ordered merging.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

#include "analysis.hpp"

namespace tricol {

/// Splits [lo, hi] into fixed chunks, evaluates fn(chunk_lo, chunk_hi) on up
/// to `workers` threads and returns the results in ascending chunk order.
/// Chunk boundaries depend only on (lo, hi, chunk), never on `workers`.
/// Chunks not started before `cancel` is raised are left empty.
template <class Fn>
auto parallel_chunks(std::uint64_t lo, std::uint64_t hi, std::uint64_t chunk, unsigned workers, Fn&& fn,
                     const std::atomic<bool>* cancel = nullptr) {
  using Result = decltype(fn(lo, hi));
  if (lo > hi) return std::vector<std::optional<Result>>{};
  chunk = std::max<std::uint64_t>(chunk, 1);
  const std::uint64_t chunks = (hi - lo) / chunk + 1;
  std::vector<std::optional<Result>> results(chunks);
  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    for (;;) {
      if (cancel && cancel->load(std::memory_order_relaxed)) return;
      const std::uint64_t i = next.fetch_add(1);
      if (i >= chunks) return;
      const std::uint64_t a = lo + i * chunk;
      const std::uint64_t b = std::min(hi, a + chunk - 1);
      results[i] = fn(a, b);
    }
  };
  workers = std::max(1u, workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return results;
}

inline unsigned default_parallelism() { return std::max(1u, std::thread::hardware_concurrency()); }

/// coverage() over [seed_lo, seed_hi] split across workers; the result does
/// not depend on the worker count.
inline CoverageReport parallel_coverage(std::uint64_t seed_lo, std::uint64_t seed_hi, std::uint64_t bin_count,
                                        std::uint64_t max_steps, unsigned workers,
                                        const std::atomic<bool>* cancel = nullptr) {
  auto parts = parallel_chunks(
      seed_lo, seed_hi, 2048, workers,
      [&](std::uint64_t a, std::uint64_t b) { return coverage(a, b, bin_count, max_steps); }, cancel);
  CoverageReport total;
  bool first = true;
  for (auto& part : parts) {
    if (!part) throw Cancelled("coverage sweep cancelled");
    total = first ? std::move(*part) : merge(total, *part);
    first = false;
  }
  if (first) return coverage(seed_lo, seed_hi, bin_count, max_steps);
  return total;
}

}  // namespace tricol
