#pragma once

// Binary digit primitives: sum of digits, 2-adic valuations, carries,
// reversal and block (factor) counting.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace digitsum {

/// Finite word over {0,1}, most significant bit first.
class BitWord {
 public:
  /// Parses a nonempty string over {0,1}; throws std::invalid_argument.
  explicit BitWord(std::string_view bits);

  size_t size() const { return bits_.size(); }
  bool contains_one() const;
  const std::vector<uint8_t>& bits() const { return bits_; }
  std::string to_string() const;

 private:
  std::vector<uint8_t> bits_;
};

enum class BinomialMethod { legendre, kummer };

/// Number of ones in the binary expansion of n.
inline unsigned sum_of_digits(uint64_t n) { return static_cast<unsigned>(__builtin_popcountll(n)); }

/// Largest e with 2^e | n. Throws std::domain_error for n = 0.
unsigned nu2(uint64_t n);

/// Valuation of the rising factorial n (n+1) ... (n+t-1), summed factor by
/// factor. Requires n >= 1. Intended as a slow reference (t <= 2^12).
uint64_t nu2_pochhammer(uint64_t n, uint64_t t);

/// Valuation of C(n+t, t), either via s(n)+s(t)-s(n+t) or by counting the
/// carries of the binary addition n + t.
unsigned nu2_binomial(uint64_t n, uint64_t t, BinomialMethod method = BinomialMethod::legendre);

/// Reverses the binary expansion of t (trailing zeros vanish). Throws for t = 0.
uint64_t reverse_binary(uint64_t t);

/// Occurrences of w as a contiguous factor of the binary expansion of t
/// prefixed with infinitely many zeros. Throws if w has no 1.
uint64_t block_count(uint64_t t, const BitWord& w);

/// Binary string of t, most significant bit first ("0" for t = 0).
std::string to_binary(uint64_t t);
/// Parses a binary string; throws std::invalid_argument.
uint64_t parse_binary(std::string_view bits);

/// floor(log2(t)) for t >= 1.
inline unsigned bit_length_minus_one(uint64_t t) { return 63u - static_cast<unsigned>(__builtin_clzll(t)); }

}  // namespace digitsum
