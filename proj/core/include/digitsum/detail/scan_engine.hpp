#pragma once

// Range traversal over the binary prefix tree.
//
// The range [lo, hi) is cut into chunks q = t >> kChunkBits. Chunk q >= 1 is
// the depth-kChunkBits subtree below prefix q; chunk 0 holds every t below
// 2^kChunkBits. Each chunk is walked depth first, so every column costs one
// recurrence step. Workers pull chunks from a shared counter and write into
// per-chunk accumulators that are merged in chunk order, which makes the
// result independent of the schedule.

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

#include "digitsum/detail/column_kernel.hpp"

namespace digitsum::detail {

inline constexpr unsigned kChunkBits = 12;

inline uint64_t chunk_of(uint64_t t) { return t >> kChunkBits; }
inline uint64_t chunk_begin(uint64_t q) { return q << kChunkBits; }
inline uint64_t chunk_end(uint64_t q) { return (q + 1) << kChunkBits; }

template <class Int, class Visit>
class ChunkWalker {
 public:
  ChunkWalker(uint64_t lo, uint64_t hi, Visit& visit) : lo_(lo), hi_(hi), visit_(visit) {}

  void run_prefix(uint64_t q, const ColumnPair<Int>& pair) { descend(q, pair, 0, kChunkBits, false); }

  void run_root(const ScaledColumn<Int>& seed) {
    // columns 1 and 2 coincide; nodes at every depth below kChunkBits are emitted
    descend(1, ColumnPair<Int>{seed, seed}, 0, kChunkBits - 1, true);
  }

 private:
  bool subtree_hits(uint64_t v, unsigned remaining, bool all_levels) const {
    for (unsigned i = all_levels ? 0 : remaining; i <= remaining; ++i) {
      const uint64_t first = v << i;
      const uint64_t last = ((v + 1) << i) - 1;
      if (last >= lo_ && first < hi_) return true;
    }
    return false;
  }

  void descend(uint64_t u, const ColumnPair<Int>& pair, unsigned depth, unsigned max_depth, bool all_levels) {
    if ((all_levels || depth == max_depth) && u >= lo_ && u < hi_) visit_(u, pair.first);
    if (depth == max_depth) return;
    const unsigned remaining = max_depth - depth - 1;
    const bool left = subtree_hits(2 * u, remaining, all_levels);
    const bool right = subtree_hits(2 * u + 1, remaining, all_levels);
    if (!left && !right) return;
    ScaledColumn<Int> mid = step(pair.first, pair.second);
    if (left) descend(2 * u, ColumnPair<Int>{pair.first, mid}, depth + 1, max_depth, all_levels);
    if (right) descend(2 * u + 1, ColumnPair<Int>{std::move(mid), pair.second}, depth + 1, max_depth, all_levels);
  }

  uint64_t lo_;
  uint64_t hi_;
  Visit& visit_;
};

/// Calls visit(t, column) for every t in [lo, hi) of chunk q, in depth-first
/// order. t = 0 gets the point-mass column.
template <class Int, class Visit>
void walk_chunk(uint64_t q, uint64_t lo, uint64_t hi, Seed seed, Visit& visit) {
  lo = std::max(lo, chunk_begin(q));
  hi = std::min(hi, chunk_end(q));
  if (lo >= hi) return;
  const ScaledColumn<Int> seed_col = seed_column<Int>(seed);
  ChunkWalker<Int, Visit> walker(lo, hi, visit);
  if (q == 0) {
    if (lo == 0) visit(uint64_t{0}, point_mass_seed<Int>());
    walker.run_root(seed_col);
  } else {
    walker.run_prefix(q, walk_pair<Int>(q, seed_col));
  }
}

/// walk_chunk with the 128-bit kernel, rerun with GMP integers on overflow.
/// `reset()` clears whatever `visit` accumulated before the rerun.
template <class Reset, class Visit>
void walk_chunk_promoting(uint64_t q, uint64_t lo, uint64_t hi, Seed seed, Reset&& reset, Visit&& visit) {
  try {
    reset();
    walk_chunk<u128>(q, lo, hi, seed, visit);
  } catch (const KernelOverflow&) {
    reset();
    walk_chunk<BigInt>(q, lo, hi, seed, visit);
  }
}

struct ChunkSchedule {
  unsigned workers = 1;
  /// Invoked in chunk order once every chunk up to q is finished.
  std::function<void(uint64_t q)> on_frontier;
};

/// Processes every chunk of [lo, hi) into its own accumulator. `fill(q, acc)`
/// must fill `acc` from scratch and may be retried (for kernel promotion).
template <class Acc, class Fill>
std::vector<Acc> run_chunks(uint64_t lo, uint64_t hi, const ChunkSchedule& schedule, Fill&& fill) {
  if (lo >= hi) return {};
  const uint64_t first = chunk_of(lo);
  const uint64_t count = chunk_of(hi - 1) - first + 1;
  std::vector<Acc> results(count);
  std::vector<char> done(count, 0);
  std::atomic<uint64_t> next{0};
  std::mutex mu;
  uint64_t frontier = 0;
  std::exception_ptr failure;

  auto worker = [&] {
    for (;;) {
      const uint64_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fill(first + i, results[i]);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
      std::lock_guard lock(mu);
      done[i] = 1;
      while (frontier < count && done[frontier]) {
        if (schedule.on_frontier) schedule.on_frontier(first + frontier);
        ++frontier;
      }
    }
  };

  const unsigned n = std::max(1u, std::min<unsigned>(schedule.workers, static_cast<unsigned>(std::min<uint64_t>(count, 1024))));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned w = 0; w < n; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace digitsum::detail
