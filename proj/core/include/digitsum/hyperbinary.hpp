#pragma once

// Proper hyperbinary expansions and the counts h_{i,j}(t) that rebuild the
// phi array.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "digitsum/numeric.hpp"

namespace digitsum {

/// Digits over {0,1,2}, most significant first. Proper: empty or leading digit nonzero.
struct HyperExpansion {
  std::vector<uint8_t> digits;

  uint64_t value() const;
  bool proper() const { return digits.empty() || digits.front() != 0; }
  std::string to_string() const;  // "100", "" for the empty expansion
  unsigned twos() const;
  unsigned zeros() const;

  friend auto operator<=>(const HyperExpansion&, const HyperExpansion&) = default;
};

/// Every proper expansion of n, sorted lexicographically.
/// Throws std::length_error when n > max_n.
std::vector<HyperExpansion> enumerate_proper(uint64_t n, uint64_t max_n = uint64_t{1} << 20);

enum class HyperMethod { enumerate, recurrence };

/// h_{i,j}(t): proper expansions of t - 1 with i twos and j zeros.
struct HyperbinaryCounts {
  uint64_t t = 0;
  std::map<std::pair<unsigned, unsigned>, uint64_t> counts;  // (i, j) -> h, nonzero only

  uint64_t at(unsigned i, unsigned j) const;
  uint64_t expansions() const;
  /// sum 2^-(i+j) h_{i,j}, which is 1.
  Dyadic weighted_total() const;

  friend bool operator==(const HyperbinaryCounts&, const HyperbinaryCounts&) = default;
};

HyperbinaryCounts h_counts(uint64_t t, HyperMethod method = HyperMethod::recurrence,
                           uint64_t max_t = uint64_t{1} << 20);

/// sum_{i-j=k} 2^-(i+j) h_{i,j}(t).
Dyadic phi_from_hyperbinary(uint64_t t, int64_t k);
Dyadic phi_from_counts(const HyperbinaryCounts& h, int64_t k);

/// sum_{i>=j>=0} 2^-(i+j) h_{i,j}(t), equal to p_t.
Dyadic corollary_sum(uint64_t t);

}  // namespace digitsum
