#include "digitsum/digits.hpp"

#include <stdexcept>

namespace digitsum {

BitWord::BitWord(std::string_view bits) {
  if (bits.empty()) throw std::invalid_argument("BitWord: empty word");
  bits_.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("BitWord: expected digits 0/1, got '" + std::string(bits) + "'");
    bits_.push_back(static_cast<uint8_t>(c - '0'));
  }
}

bool BitWord::contains_one() const {
  for (auto b : bits_) {
    if (b) return true;
  }
  return false;
}

std::string BitWord::to_string() const {
  std::string s;
  for (auto b : bits_) s.push_back(static_cast<char>('0' + b));
  return s;
}

unsigned nu2(uint64_t n) {
  if (n == 0) throw std::domain_error("nu2(0) is infinite");
  return static_cast<unsigned>(__builtin_ctzll(n));
}

uint64_t nu2_pochhammer(uint64_t n, uint64_t t) {
  if (n == 0) throw std::domain_error("nu2_pochhammer: n must be positive");
  uint64_t v = 0;
  for (uint64_t i = n; i < n + t; ++i) v += nu2(i);
  return v;
}

unsigned nu2_binomial(uint64_t n, uint64_t t, BinomialMethod method) {
  if (method == BinomialMethod::legendre) {
    return sum_of_digits(n) + sum_of_digits(t) - sum_of_digits(n + t);
  }
  unsigned carries = 0;
  unsigned carry = 0;
  for (; n != 0 || t != 0 || carry != 0; n >>= 1, t >>= 1) {
    const unsigned column = static_cast<unsigned>(n & 1) + static_cast<unsigned>(t & 1) + carry;
    carry = column >> 1;
    carries += carry;
  }
  return carries;
}

uint64_t reverse_binary(uint64_t t) {
  if (t == 0) throw std::domain_error("reverse_binary(0) is undefined");
  uint64_t r = 0;
  for (; t != 0; t >>= 1) r = (r << 1) | (t & 1);
  return r;
}

uint64_t block_count(uint64_t t, const BitWord& w) {
  if (!w.contains_one()) throw std::invalid_argument("block_count: word must contain a 1");
  const auto& pattern = w.bits();
  const size_t len = pattern.size();
  // Any occurrence contains a 1, so it overlaps the expansion of t; len - 1
  // leading zeros are enough padding.
  std::vector<uint8_t> text(len - 1, 0);
  if (t != 0) {
    for (int i = static_cast<int>(bit_length_minus_one(t)); i >= 0; --i) {
      text.push_back(static_cast<uint8_t>((t >> i) & 1));
    }
  }
  uint64_t count = 0;
  for (size_t i = 0; i + len <= text.size(); ++i) {
    bool match = true;
    for (size_t j = 0; j < len && match; ++j) match = text[i + j] == pattern[j];
    count += match;
  }
  return count;
}

std::string to_binary(uint64_t t) {
  if (t == 0) return "0";
  std::string s;
  for (int i = static_cast<int>(bit_length_minus_one(t)); i >= 0; --i) s.push_back(static_cast<char>('0' + ((t >> i) & 1)));
  return s;
}

uint64_t parse_binary(std::string_view bits) {
  if (bits.empty() || bits.size() > 64) throw std::invalid_argument("parse_binary: expected 1..64 binary digits");
  uint64_t v = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("parse_binary: invalid digit in '" + std::string(bits) + "'");
    v = (v << 1) | static_cast<uint64_t>(c - '0');
  }
  return v;
}

}  // namespace digitsum
