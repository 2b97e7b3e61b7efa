#include "digitsum/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace digitsum {

namespace {

int ctz128(u128 v) {
  const auto lo = static_cast<uint64_t>(v);
  if (lo != 0) return __builtin_ctzll(lo);
  return 64 + __builtin_ctzll(static_cast<uint64_t>(v >> 64));
}

// Number of significant bits of |v|.
int bit_width_abs(i128 v) {
  u128 u = v < 0 ? u128{0} - static_cast<u128>(v) : static_cast<u128>(v);
  const auto hi = static_cast<uint64_t>(u >> 64);
  if (hi != 0) return 128 - __builtin_clzll(hi);
  const auto lo = static_cast<uint64_t>(u);
  if (lo != 0) return 64 - __builtin_clzll(lo);
  return 0;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

BigInt parse_integer(std::string_view text) {
  text = trim(text);
  std::string s(text);
  if (!s.empty() && s.front() == '+') s.erase(s.begin());
  BigInt v;
  if (s.empty() || v.set_str(s, 10) != 0) {
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

BigInt to_bigint(u128 v) {
  BigInt r(static_cast<unsigned long>(static_cast<uint64_t>(v >> 64)));
  r <<= 64;
  r += static_cast<unsigned long>(static_cast<uint64_t>(v));
  return r;
}

BigInt to_bigint(i128 v) {
  if (v >= 0) return to_bigint(static_cast<u128>(v));
  BigInt r = to_bigint(u128{0} - static_cast<u128>(v));
  return -r;
}

bool fits_i128(const BigInt& v) {
  if (sgn(v) == 0) return true;
  const size_t bits = mpz_sizeinbase(v.get_mpz_t(), 2);
  if (bits <= 127) return true;
  // -2^127 is the single 128-bit magnitude that still fits.
  return sgn(v) < 0 && bits == 128 && mpz_scan1(v.get_mpz_t(), 0) == 127;
}

i128 to_i128(const BigInt& v) {
  static_assert(sizeof(mp_limb_t) == 8, "64-bit GMP limbs expected");
  const mpz_srcptr z = v.get_mpz_t();
  const size_t n = mpz_size(z);
  u128 mag = 0;
  if (n > 0) mag = mpz_getlimbn(z, 0);
  if (n > 1) mag |= static_cast<u128>(mpz_getlimbn(z, 1)) << 64;
  return sgn(v) < 0 ? static_cast<i128>(u128{0} - mag) : static_cast<i128>(mag);
}

std::string to_string(i128 v) { return to_bigint(v).get_str(); }

// ---------------------------------------------------------------------------
// Dyadic

Dyadic::Dyadic(int64_t value) : mantissa_(i128{value}) { normalize(); }

Dyadic Dyadic::from_parts(i128 mantissa, int64_t scale) {
  Dyadic d;
  d.mantissa_ = mantissa;
  d.scale_ = scale;
  d.normalize();
  return d;
}

Dyadic Dyadic::from_parts(const BigInt& mantissa, int64_t scale) {
  Dyadic d;
  d.mantissa_ = mantissa;
  d.scale_ = scale;
  d.normalize();
  return d;
}

Dyadic Dyadic::pow2(int64_t k) { return from_parts(i128{1}, -k); }

void Dyadic::normalize() {
  if (auto* m = std::get_if<i128>(&mantissa_)) {
    if (*m == 0) {
      scale_ = 0;
      return;
    }
    const int tz = ctz128(static_cast<u128>(*m));
    *m >>= tz;
    scale_ -= tz;
    return;
  }
  BigInt& m = std::get<BigInt>(mantissa_);
  if (sgn(m) == 0) {
    mantissa_ = i128{0};
    scale_ = 0;
    return;
  }
  const auto tz = static_cast<int64_t>(mpz_scan1(m.get_mpz_t(), 0));
  if (tz > 0) {
    mpz_tdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(tz));
    scale_ -= tz;
  }
  if (fits_i128(m)) mantissa_ = to_i128(m);
}

bool Dyadic::is_zero() const {
  if (const auto* m = std::get_if<i128>(&mantissa_)) return *m == 0;
  return false;  // big mantissas are never zero in canonical form
}

int Dyadic::sign() const {
  if (const auto* m = std::get_if<i128>(&mantissa_)) return (*m > 0) - (*m < 0);
  return sgn(std::get<BigInt>(mantissa_));
}

BigInt Dyadic::mantissa() const {
  if (const auto* m = std::get_if<i128>(&mantissa_)) return to_bigint(*m);
  return std::get<BigInt>(mantissa_);
}

Dyadic Dyadic::mul_pow2(int64_t k) const {
  if (is_zero()) return *this;
  Dyadic r = *this;
  r.scale_ -= k;
  return r;
}

Dyadic Dyadic::operator-() const {
  Dyadic r = *this;
  if (auto* m = std::get_if<i128>(&r.mantissa_)) {
    if (*m == std::numeric_limits<i128>::min()) {
      r.mantissa_ = -to_bigint(*m);
    } else {
      *m = -*m;
    }
  } else {
    BigInt& b = std::get<BigInt>(r.mantissa_);
    b = -b;
    r.normalize();  // +2^127 -> still big, -2^127 could demote
  }
  return r;
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const int64_t s = std::max(a.scale_, b.scale_);
  const int64_t da = s - a.scale_;
  const int64_t db = s - b.scale_;
  if (a.is_small() && b.is_small()) {
    const i128 ma = std::get<i128>(a.mantissa_);
    const i128 mb = std::get<i128>(b.mantissa_);
    if (bit_width_abs(ma) + da <= 126 && bit_width_abs(mb) + db <= 126) {
      const i128 xa = ma * (i128{1} << da);
      const i128 xb = mb * (i128{1} << db);
      i128 sum;
      if (!__builtin_add_overflow(xa, xb, &sum)) return Dyadic::from_parts(sum, s);
    }
  }
  BigInt xa = a.mantissa();
  BigInt xb = b.mantissa();
  mpz_mul_2exp(xa.get_mpz_t(), xa.get_mpz_t(), static_cast<mp_bitcnt_t>(da));
  mpz_mul_2exp(xb.get_mpz_t(), xb.get_mpz_t(), static_cast<mp_bitcnt_t>(db));
  return Dyadic::from_parts(BigInt(xa + xb), s);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero() || b.is_zero()) return Dyadic{};
  const int64_t s = a.scale_ + b.scale_;
  if (a.is_small() && b.is_small()) {
    i128 p;
    if (!__builtin_mul_overflow(std::get<i128>(a.mantissa_), std::get<i128>(b.mantissa_), &p)) {
      return Dyadic::from_parts(p, s);
    }
  }
  return Dyadic::from_parts(BigInt(a.mantissa() * b.mantissa()), s);
}

bool operator==(const Dyadic& a, const Dyadic& b) {
  if (a.scale_ != b.scale_ || a.is_small() != b.is_small()) return false;
  if (a.is_small()) return std::get<i128>(a.mantissa_) == std::get<i128>(b.mantissa_);
  return std::get<BigInt>(a.mantissa_) == std::get<BigInt>(b.mantissa_);
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  if (a.scale_ == b.scale_ && a.is_small() && b.is_small()) {
    return std::get<i128>(a.mantissa_) <=> std::get<i128>(b.mantissa_);
  }
  const int s = (a - b).sign();
  return s < 0 ? std::strong_ordering::less
               : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Dyadic::operator Rational() const {
  BigInt m = mantissa();
  if (scale_ <= 0) {
    mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(-scale_));
    return Rational(m);
  }
  BigInt den;
  mpz_setbit(den.get_mpz_t(), static_cast<mp_bitcnt_t>(scale_));
  Rational q;
  q.get_num() = m;
  q.get_den() = den;  // already coprime: m odd
  return q;
}

double Dyadic::to_double() const {
  if (const auto* m = std::get_if<i128>(&mantissa_)) {
    return std::ldexp(static_cast<double>(*m), static_cast<int>(-scale_));
  }
  long exp = 0;
  const double d = mpz_get_d_2exp(&exp, std::get<BigInt>(mantissa_).get_mpz_t());
  return std::ldexp(d, static_cast<int>(exp - scale_));
}

std::string Dyadic::to_string() const {
  if (is_zero()) return "0";
  if (scale_ <= 0) return digitsum::to_string(to_rational());
  return mantissa().get_str() + "/2^" + std::to_string(scale_);
}

std::string Dyadic::to_fraction_string() const { return digitsum::to_string(to_rational()); }

std::string Dyadic::to_decimal(int digits) const { return digitsum::to_decimal(to_rational(), digits); }

Dyadic Dyadic::from_rational(const Rational& q) {
  const BigInt& den = q.get_den();
  if (mpz_popcount(den.get_mpz_t()) != 1) {
    throw std::domain_error("denominator of " + digitsum::to_string(q) + " is not a power of two");
  }
  const auto e = static_cast<int64_t>(mpz_sizeinbase(den.get_mpz_t(), 2)) - 1;
  return from_parts(q.get_num(), e);
}

Dyadic Dyadic::parse(std::string_view text) {
  text = trim(text);
  if (const auto pos = text.find("/2^"); pos != std::string_view::npos) {
    const BigInt p = parse_integer(text.substr(0, pos));
    const BigInt e = parse_integer(text.substr(pos + 3));
    if (!e.fits_slong_p()) throw std::invalid_argument("exponent out of range");
    return from_parts(p, e.get_si());
  }
  if (text.find('/') != std::string_view::npos) return from_rational(parse_rational(text));
  return from_parts(parse_integer(text), 0);
}

// ---------------------------------------------------------------------------
// Rational helpers

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  text = trim(text);
  if (const auto pos = text.find('/'); pos != std::string_view::npos) {
    const BigInt num = parse_integer(text.substr(0, pos));
    const BigInt den = parse_integer(text.substr(pos + 1));
    if (sgn(den) == 0) throw std::invalid_argument("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  return Rational(parse_integer(text));
}

double to_double(const Rational& q) { return q.get_d(); }

std::string to_decimal(const Rational& q, int digits) {
  digits = std::max(digits, 0);
  BigInt num = abs(q.get_num());
  const BigInt& den = q.get_den();
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  // round(num * 10^d / den), ties away from zero
  BigInt scaled = (2 * num * scale + den) / (2 * den);
  std::string body = scaled.get_str();
  if (static_cast<int>(body.size()) <= digits) {
    body.insert(0, static_cast<size_t>(digits) + 1 - body.size(), '0');
  }
  std::string out = sgn(q) < 0 && sgn(scaled) != 0 ? "-" : "";
  out += body.substr(0, body.size() - static_cast<size_t>(digits));
  if (digits > 0) out += "." + body.substr(body.size() - static_cast<size_t>(digits));
  return out;
}

Dyadic divide_exact(const Dyadic& a, int64_t d) {
  if (d == 0) throw std::domain_error("divide_exact: division by zero");
  const int shift = __builtin_ctzll(static_cast<uint64_t>(d));
  const int64_t odd = d >> shift;
  BigInt m = a.mantissa();
  if (!mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(odd < 0 ? -odd : odd))) {
    throw std::domain_error("divide_exact: quotient is not dyadic");
  }
  mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(odd < 0 ? -odd : odd));
  if (odd < 0) m = -m;
  return Dyadic::from_parts(m, a.scale() + shift);
}

bool is_dyadic(const Rational& q) { return mpz_popcount(q.get_den().get_mpz_t()) == 1; }

BigInt binomial_exact(int64_t n, int64_t k) {
  if (n < 0) throw std::invalid_argument("binomial_exact: n must be nonnegative");
  if (k < 0 || k > n) return BigInt(0);
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

}  // namespace digitsum
