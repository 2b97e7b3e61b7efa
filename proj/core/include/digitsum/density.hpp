#pragma once

// Exact densities delta(k, t) of {n : s(n+t) - s(n) = k}, the simplified
// array phi(k, t), the derived values c_t, c~_t, p_t, and range scans.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "digitsum/numeric.hpp"

namespace digitsum {

/// Column (delta(k, t))_k: an explicit window k_lo..k_hi plus the geometric
/// lower tail delta(k, t) = delta(k_lo, t) * 2^(k - k_lo) for k <= k_lo.
/// Canonical: window.back() != 0 and k_lo is as large as the tail allows.
struct DeltaColumn {
  uint64_t t = 0;
  int64_t k_lo = 0;
  std::vector<Dyadic> window;

  int64_t k_hi() const { return k_lo + static_cast<int64_t>(window.size()) - 1; }
  const Dyadic& tail_head() const { return window.front(); }

  Dyadic at(int64_t k) const;
  /// Sum over all k in Z (window plus closed-form tail).
  Dyadic total() const;
  /// Sum over k >= from.
  Dyadic sum_from(int64_t from) const;

  /// Builds the canonical column from any valid window [k_lo, ...] whose
  /// first entry starts a geometric tail.
  static DeltaColumn canonical(uint64_t t, int64_t k_lo, std::vector<Dyadic> window);

  friend bool operator==(const DeltaColumn&, const DeltaColumn&) = default;
};

/// Finitely supported column (phi(k, t))_k, entries k_min .. k_min+size-1.
struct PhiColumn {
  uint64_t t = 0;
  int64_t k_min = 0;
  std::vector<Dyadic> support;

  int64_t k_max() const { return k_min + static_cast<int64_t>(support.size()) - 1; }
  Dyadic at(int64_t k) const;
  Dyadic total() const;
  Dyadic sum_from(int64_t from) const;

  friend bool operator==(const PhiColumn&, const PhiColumn&) = default;
};

/// delta(., t) via the two-adjacent-columns digit walk. Throws for t = 0.
DeltaColumn delta_column(uint64_t t);
Dyadic delta(int64_t k, uint64_t t);

/// c_t = sum_{k>=0} delta(k, t), with c_0 = 1.
Dyadic ct(uint64_t t);
/// c~_t = c_t - delta(0, t), with c~_0 = 0.
Dyadic ct_tilde(uint64_t t);

PhiColumn phi_column(uint64_t t);
Dyadic phi(int64_t k, uint64_t t);
/// p_t = sum_{k>=0} phi(k, t).
Dyadic pt(uint64_t t);

/// delta(., t) rebuilt from phi(., t) by convolution with delta(., 1).
DeltaColumn delta_from_phi(uint64_t t);

/// delta(k, t) == phi(k, 2^(s(t)+1) t + 1). Requires k >= 0.
bool phi_reduction_check(uint64_t t, int64_t k);

/// Density of {n : s(n+t) - s(n) = k} by enumerating n modulo 2^m with
/// m = bits(t) + s(t) - k. Residues whose addition carries out of the top bit
/// have more than s(t) - k carries, so they never count. Throws
/// std::length_error when m > max_bits.
Dyadic brute_force_density(int64_t k, uint64_t t, unsigned max_bits = 24);

// ---------------------------------------------------------------------------
// Range scans

struct Witness {
  uint64_t t = 0;
  Dyadic value;
  friend bool operator==(const Witness&, const Witness&) = default;
};

struct EpsilonCount {
  Dyadic epsilon;
  uint64_t count = 0;  // t with 1/2 < c_t < 1/2 + epsilon
  friend bool operator==(const EpsilonCount&, const EpsilonCount&) = default;
};

struct ScanReport {
  uint64_t t_lo = 0;
  uint64_t t_hi = 0;
  uint64_t checked = 0;
  std::vector<Witness> violations_c;       // c_t <= 1/2
  std::vector<Witness> violations_ctilde;  // c~_t > 1/2
  std::optional<Witness> min_c;            // smallest c_t, earliest t on ties
  std::optional<Witness> max_ctilde;       // largest c~_t, earliest t on ties
  std::vector<EpsilonCount> epsilon_counts;

  /// Appends a report for the adjacent range [t_hi, other.t_hi).
  void merge(const ScanReport& other);

  friend bool operator==(const ScanReport&, const ScanReport&) = default;
};

struct ScanOptions {
  unsigned workers = 1;
  /// Text file holding "last_completed_prefix=<binary>"; read to resume and
  /// rewritten as chunks complete. Empty disables checkpointing.
  std::string checkpoint_path;
};

/// Checks c~_t <= 1/2 < c_t for every t in [t_lo, t_hi).
ScanReport scan_range(uint64_t t_lo, uint64_t t_hi, const std::vector<Dyadic>& epsilons = {},
                      const ScanOptions& options = {});

/// Sums over a range, used for moments: sum c, sum c^2, sum c~, sum c~^2.
struct RangeSums {
  uint64_t count = 0;
  Dyadic sum_c, sum_c2, sum_ctilde, sum_ctilde2;
  friend bool operator==(const RangeSums&, const RangeSums&) = default;
};
RangeSums range_sums(uint64_t t_lo, uint64_t t_hi, unsigned workers = 1);

/// Visits (t, c_t, c~_t) for every t in [t_lo, t_hi) in increasing order of t.
void for_each_ct(uint64_t t_lo, uint64_t t_hi, const std::function<void(uint64_t, const Dyadic&, const Dyadic&)>& fn);

/// Smallest p_t over [t_lo, t_hi), earliest t on ties.
Witness min_pt(uint64_t t_lo, uint64_t t_hi, unsigned workers = 1);

/// Checkpoint line helpers ("last_completed_prefix=<binary>").
std::string checkpoint_line(uint64_t chunk);
std::optional<uint64_t> read_checkpoint(const std::string& path);
/// First t not covered by a completed chunk.
uint64_t resume_point(uint64_t chunk);

}  // namespace digitsum
