#pragma once

// Exact arithmetic: big integers, dyadic rationals p/2^e and general
// rationals. No floating point is used for any stored value.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace digitsum {

using BigInt = mpz_class;
using Rational = mpq_class;

using i128 = __int128;
using u128 = unsigned __int128;

/// Exact rational number with power-of-two denominator.
///
/// Stored as mantissa * 2^(-scale) in canonical form: the mantissa is odd,
/// or the value is zero with scale 0. Mantissas that fit a signed 128-bit
/// integer stay on a machine-word fast path; larger ones are promoted to a
/// GMP integer and demoted again whenever a result fits.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(int64_t value);  // NOLINT: integers convert implicitly

  /// mantissa * 2^(-scale), normalized.
  static Dyadic from_parts(i128 mantissa, int64_t scale);
  static Dyadic from_parts(const BigInt& mantissa, int64_t scale);

  /// Exact conversion; throws std::domain_error if the denominator is not a
  /// power of two.
  static Dyadic from_rational(const Rational& q);

  /// Accepts "p/2^e", "p/q" (q a power of two), or a plain integer.
  static Dyadic parse(std::string_view text);

  /// 2^k for any integer k.
  static Dyadic pow2(int64_t k);

  bool is_zero() const;
  int sign() const;
  bool is_small() const { return std::holds_alternative<i128>(mantissa_); }

  BigInt mantissa() const;
  int64_t scale() const { return scale_; }

  Dyadic halve() const { return mul_pow2(-1); }
  Dyadic mul_pow2(int64_t k) const;

  Dyadic operator-() const;
  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  Dyadic& operator+=(const Dyadic& b) { return *this = *this + b; }
  Dyadic& operator-=(const Dyadic& b) { return *this = *this - b; }
  Dyadic& operator*=(const Dyadic& b) { return *this = *this * b; }

  friend bool operator==(const Dyadic& a, const Dyadic& b);
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

  operator Rational() const;  // NOLINT: exact, so implicit
  Rational to_rational() const { return static_cast<Rational>(*this); }

  double to_double() const;

  /// Canonical interchange form: "p/2^e" with p odd and e >= 1, a plain
  /// integer when the value is integral, "0" for zero.
  std::string to_string() const;
  /// Reduced fraction "p/q" with q written out, e.g. "11/16".
  std::string to_fraction_string() const;
  /// Decimal rendering rounded half-away-from-zero to `digits` places.
  std::string to_decimal(int digits = 12) const;

 private:
  void normalize();

  std::variant<i128, BigInt> mantissa_{i128{0}};
  int64_t scale_ = 0;
};

// Rational helpers.
std::string to_string(const Rational& q);
Rational parse_rational(std::string_view text);
double to_double(const Rational& q);
std::string to_decimal(const Rational& q, int digits = 12);
bool is_dyadic(const Rational& q);

/// a / d for a nonzero integer d; throws std::domain_error unless the
/// quotient is again dyadic.
Dyadic divide_exact(const Dyadic& a, int64_t d);

/// Binomial coefficient C(n, k); zero when k < 0 or k > n. Requires n >= 0.
BigInt binomial_exact(int64_t n, int64_t k);

/// Conversions between GMP integers and 128-bit machine integers.
BigInt to_bigint(i128 v);
BigInt to_bigint(u128 v);
bool fits_i128(const BigInt& v);
i128 to_i128(const BigInt& v);

std::string to_string(i128 v);

}  // namespace digitsum
