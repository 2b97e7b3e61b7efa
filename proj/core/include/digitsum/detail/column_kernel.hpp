#pragma once

// Common-denominator column representation used by every density walk.
//
// A column stores value(k) = num[k - lo] / 2^exp for lo <= k <= hi, the
// geometric extension value(k) = value(lo) * 2^(k - lo) for k < lo, and zero
// above hi. The recurrence
//     next(k) = 1/2 left(k - 1) + 1/2 right(k + 1)
// maps columns of this shape to columns of this shape. Columns are kept in a
// canonical form (top entry nonzero, lo as large as the geometric tail
// allows, exp minimal), so equal columns compare equal field by field.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "digitsum/digits.hpp"
#include "digitsum/numeric.hpp"

namespace digitsum::detail {

/// Thrown by the 128-bit kernel when a common exponent would not fit.
struct KernelOverflow : std::overflow_error {
  KernelOverflow() : std::overflow_error("128-bit column kernel overflow") {}
};

// --- integer traits ---------------------------------------------------------

inline u128 shl(const u128& x, uint64_t s) { return s >= 128 ? u128{0} : x << s; }
inline BigInt shl(const BigInt& x, uint64_t s) {
  BigInt r;
  mpz_mul_2exp(r.get_mpz_t(), x.get_mpz_t(), static_cast<mp_bitcnt_t>(s));
  return r;
}
inline void shr_inplace(u128& x, uint64_t s) { x >>= s; }
inline void shr_inplace(BigInt& x, uint64_t s) {
  mpz_tdiv_q_2exp(x.get_mpz_t(), x.get_mpz_t(), static_cast<mp_bitcnt_t>(s));
}
inline bool is_zero(const u128& x) { return x == 0; }
inline bool is_zero(const BigInt& x) { return sgn(x) == 0; }
inline uint64_t trailing_zeros(const u128& x) {
  const auto lo = static_cast<uint64_t>(x);
  if (lo != 0) return static_cast<uint64_t>(__builtin_ctzll(lo));
  return 64 + static_cast<uint64_t>(__builtin_ctzll(static_cast<uint64_t>(x >> 64)));
}
inline uint64_t trailing_zeros(const BigInt& x) { return mpz_scan1(x.get_mpz_t(), 0); }
inline bool twice_equals(const u128& big, const u128& small) { return (small >> 127) == 0 && big == (small << 1); }
inline bool twice_equals(const BigInt& big, const BigInt& small) { return big == shl(small, 1); }

inline Dyadic make_dyadic(const u128& num, uint64_t exp) {
  if ((num >> 127) != 0) return Dyadic::from_parts(to_bigint(num), static_cast<int64_t>(exp));
  return Dyadic::from_parts(static_cast<i128>(num), static_cast<int64_t>(exp));
}
inline Dyadic make_dyadic(const BigInt& num, uint64_t exp) {
  return Dyadic::from_parts(num, static_cast<int64_t>(exp));
}

template <class Int>
inline constexpr bool kBounded = std::is_same_v<Int, u128>;

// Largest common exponent the 128-bit kernel accepts. Every stored value is
// at most 1, so numerators stay below 2^126 and pairwise sums cannot wrap.
inline constexpr uint64_t kMaxSmallExponent = 125;

// --- column -----------------------------------------------------------------

template <class Int>
struct ScaledColumn {
  int64_t lo = 0;
  uint64_t exp = 0;
  std::vector<Int> num;

  int64_t hi() const { return lo + static_cast<int64_t>(num.size()) - 1; }

  /// value(k) * 2^target; requires target large enough for an exact result.
  Int scaled(int64_t k, uint64_t target) const {
    if (k > hi()) return Int{0};
    if (k >= lo) return shl(num[static_cast<size_t>(k - lo)], target - exp);
    return shl(num[0], target - exp - static_cast<uint64_t>(lo - k));
  }

  Dyadic value(int64_t k) const {
    if (k > hi()) return Dyadic{};
    if (k >= lo) return make_dyadic(num[static_cast<size_t>(k - lo)], exp);
    return make_dyadic(num[0], exp + static_cast<uint64_t>(lo - k));
  }

  /// Sum of value(k) over k >= from (all k when from is below lo).
  Dyadic sum_from(int64_t from) const {
    const int64_t first = std::max(from, lo);
    Int window{0};
    for (int64_t k = first; k <= hi(); ++k) window += num[static_cast<size_t>(k - lo)];
    Dyadic total = make_dyadic(window, exp);
    if (from < lo) {
      // tail: sum_{from <= k < lo} num0 * 2^(k-lo) = num0 * (1 - 2^(from-lo))
      total += make_dyadic(num[0], exp) - make_dyadic(num[0], exp + static_cast<uint64_t>(lo - from));
    }
    return total;
  }

  /// Sum over all k, geometric tail included.
  Dyadic total() const {
    Int window{0};
    for (const auto& v : num) window += v;
    return make_dyadic(window, exp) + make_dyadic(num[0], exp);
  }

  void canonicalize() {
    while (num.size() > 1 && is_zero(num.back())) num.pop_back();
    size_t drop = 0;
    while (drop + 1 < num.size() && twice_equals(num[drop + 1], num[drop])) ++drop;
    if (drop > 0) {
      num.erase(num.begin(), num.begin() + static_cast<std::ptrdiff_t>(drop));
      lo += static_cast<int64_t>(drop);
    }
    uint64_t shift = exp;
    for (const auto& v : num) {
      if (shift == 0) break;
      if (!is_zero(v)) shift = std::min(shift, trailing_zeros(v));
    }
    if (shift > 0) {
      for (auto& v : num) shr_inplace(v, shift);
      exp -= shift;
    }
  }

  friend bool operator==(const ScaledColumn& a, const ScaledColumn& b) {
    return a.lo == b.lo && a.exp == b.exp && a.num == b.num;
  }
};

/// next(k) = 1/2 left(k-1) + 1/2 right(k+1).
template <class Int>
ScaledColumn<Int> step(const ScaledColumn<Int>& left, const ScaledColumn<Int>& right) {
  ScaledColumn<Int> out;
  out.lo = std::min(left.lo + 1, right.lo - 1);
  const int64_t out_hi = std::max(left.hi() + 1, right.hi() - 1);
  const uint64_t need_left = left.exp + static_cast<uint64_t>(std::max<int64_t>(0, left.lo - (out.lo - 1)));
  const uint64_t need_right = right.exp + static_cast<uint64_t>(std::max<int64_t>(0, right.lo - (out.lo + 1)));
  const uint64_t inner = std::max(need_left, need_right);
  out.exp = inner + 1;
  if constexpr (kBounded<Int>) {
    if (out.exp > kMaxSmallExponent) throw KernelOverflow{};
  }
  out.num.reserve(static_cast<size_t>(out_hi - out.lo + 1));
  for (int64_t k = out.lo; k <= out_hi; ++k) {
    out.num.push_back(left.scaled(k - 1, inner) + right.scaled(k + 1, inner));
  }
  out.canonicalize();
  return out;
}

/// delta(k, 1) = 2^(k-2) for k <= 1: a single window entry 1/2 at k = 1.
template <class Int>
ScaledColumn<Int> delta_seed() {
  return ScaledColumn<Int>{1, 1, {Int{1}}};
}

/// Point mass at k = 0 (phi(., 1), and also delta(., 0)).
template <class Int>
ScaledColumn<Int> point_mass_seed() {
  return ScaledColumn<Int>{-1, 0, {Int{0}, Int{1}}};
}

template <class Int>
using ColumnPair = std::pair<ScaledColumn<Int>, ScaledColumn<Int>>;

/// Columns (t, t+1) by walking the binary digits of t >= 1 from the top.
template <class Int>
ColumnPair<Int> walk_pair(uint64_t t, const ScaledColumn<Int>& seed) {
  if (t == 0) throw std::domain_error("walk_pair: t must be positive");
  ColumnPair<Int> pair{seed, seed};  // columns 1 and 2 coincide
  for (int i = static_cast<int>(bit_length_minus_one(t)) - 1; i >= 0; --i) {
    ScaledColumn<Int> mid = step(pair.first, pair.second);
    if ((t >> i) & 1) {
      pair.first = std::move(mid);
    } else {
      pair.second = std::move(mid);
    }
  }
  return pair;
}

template <class Int>
ScaledColumn<Int> walk(uint64_t t, const ScaledColumn<Int>& seed) {
  return walk_pair(t, seed).first;
}

enum class Seed { delta, phi };

template <class Int>
ScaledColumn<Int> seed_column(Seed s) {
  return s == Seed::delta ? delta_seed<Int>() : point_mass_seed<Int>();
}

/// Runs `fn` with the 128-bit kernel, retrying with GMP integers on overflow.
template <class Fn>
auto with_promotion(Fn&& fn) {
  try {
    return fn(u128{});
  } catch (const KernelOverflow&) {
    return fn(BigInt{});
  }
}

}  // namespace digitsum::detail
