#include "doctest.h"

#include <stdexcept>

#include <random>

#include "digitsum/density.hpp"
#include "digitsum/digits.hpp"
#include "digitsum/numeric.hpp"

using namespace digitsum;

namespace {

Dyadic random_dyadic(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> scale(-40, 200);
  std::uniform_int_distribution<int> limbs(1, 4);
  BigInt m = 0;
  for (int i = limbs(rng); i > 0; --i) {
    m <<= 64;
    m += static_cast<unsigned long>(rng());
  }
  if (rng() & 1) m = -m;
  return Dyadic::from_parts(m, scale(rng));
}

}  // namespace

TEST_CASE("dyadic ring laws") {
  std::mt19937_64 rng(20240601);
  for (int i = 0; i < 2000; ++i) {
    const Dyadic a = random_dyadic(rng), b = random_dyadic(rng), c = random_dyadic(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a - a == Dyadic());
    CHECK(a.halve().mul_pow2(1) == a);
    CHECK(static_cast<Rational>(a) + static_cast<Rational>(b) == static_cast<Rational>(a + b));
    CHECK((a < b) == (static_cast<Rational>(a) < static_cast<Rational>(b)));
  }
}

TEST_CASE("dyadic canonical form is idempotent") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const Dyadic a = random_dyadic(rng);
    const Dyadic again = Dyadic::from_parts(a.mantissa(), a.scale());
    CHECK(again.mantissa() == a.mantissa());
    CHECK(again.scale() == a.scale());
    CHECK((a.is_zero() || mpz_odd_p(a.mantissa().get_mpz_t()) || a.scale() <= 0));
    CHECK(Dyadic::parse(a.to_string()) == a);
  }
}

TEST_CASE("Pascal's rule") {
  for (int64_t n = 1; n <= 64; ++n) {
    for (int64_t k = 0; k <= n; ++k) CHECK(binomial_exact(n, k) == binomial_exact(n - 1, k - 1) + binomial_exact(n - 1, k));
  }
}

TEST_CASE("digit sum differences and valuations") {
  bool ok = true;
  for (uint64_t t = 0; t < 256; ++t) {
    for (uint64_t n = 0; n < 65536; ++n) {
      const int64_t diff = static_cast<int64_t>(sum_of_digits(n + t)) - static_cast<int64_t>(sum_of_digits(n));
      const auto legendre = nu2_binomial(n, t, BinomialMethod::legendre);
      ok = ok && diff == static_cast<int64_t>(t) - static_cast<int64_t>(nu2_pochhammer(n + 1, t));
      ok = ok && diff == static_cast<int64_t>(sum_of_digits(t)) - static_cast<int64_t>(legendre);
      ok = ok && legendre == nu2_binomial(n, t, BinomialMethod::kummer);
    }
  }
  CHECK(ok);
}

TEST_CASE("complement symmetry of binomial valuations") {
  bool ok = true;
  for (unsigned lambda = 1; lambda <= 12; ++lambda) {
    const uint64_t top = (uint64_t{1} << lambda) - 1;
    for (uint64_t t = 1; t <= top; ++t) {
      for (uint64_t n = 0; n + t <= top; ++n) ok = ok && nu2_binomial(n, t) == nu2_binomial(top - t - n, n);
    }
  }
  CHECK(ok);
}

TEST_CASE("block count of the word 1") {
  for (uint64_t t = 0; t < 65536; ++t) REQUIRE(block_count(t, BitWord("1")) == sum_of_digits(t));
}

TEST_CASE("reversal symmetry") {
  for (uint64_t t = 1; t < 16384; t += 2) {
    const DeltaColumn a = delta_column(t), b = delta_column(reverse_binary(t));
    REQUIRE(a.k_lo == b.k_lo);
    REQUIRE(a.window == b.window);
  }
}

TEST_CASE("normalization and support bounds") {
  for (uint64_t t = 1; t < 4096; ++t) {
    const DeltaColumn d = delta_column(t);
    const PhiColumn p = phi_column(t);
    const auto s = static_cast<int64_t>(sum_of_digits(t));
    REQUIRE(d.total() == 1);
    REQUIRE(p.total() == 1);
    REQUIRE(d.k_hi() == s);
    REQUIRE(d.at(s + 1) == 0);
    REQUIRE(p.at(s) == 0);
  }
}

TEST_CASE("phi symmetry") {
  for (uint64_t t = 1; t < 4096; ++t) {
    const uint64_t mirror = 3 * (uint64_t{1} << bit_length_minus_one(t)) - t;
    const PhiColumn a = phi_column(t), b = phi_column(mirror);
    CAPTURE(t);
    REQUIRE(a.k_min == -b.k_max());
    for (int64_t k = a.k_min; k <= a.k_max(); ++k) REQUIRE(a.at(k) == b.at(-k));
  }
}

TEST_CASE("parity") {
  std::vector<Dyadic> c, c2;
  for_each_ct(0, uint64_t{1} << 17, [&](uint64_t, const Dyadic& v, const Dyadic& w) {
    c.push_back(v);
    c2.push_back(w);
  });
  for (uint64_t t = 0; t < 65536; ++t) {
    REQUIRE(c[2 * t] == c[t]);
    REQUIRE(c2[2 * t] == c2[t]);
  }
}

TEST_CASE("enumeration oracle") {
  for (uint64_t t = 1; t <= 12; ++t) {
    const auto bound = static_cast<int64_t>(t) + 2;
    for (int64_t k = -bound; k <= bound; ++k) {
      CAPTURE(t);
      CAPTURE(k);
      CHECK(delta(k, t) == brute_force_density(k, t));
    }
  }
}

TEST_CASE("geometric tail against enumeration") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<uint64_t> pick(1, 1024);
  for (int i = 0; i < 60; ++i) {
    const uint64_t t = pick(rng);
    const DeltaColumn col = delta_column(t);
    const int64_t s = static_cast<int64_t>(sum_of_digits(t));
    const int64_t length = static_cast<int64_t>(bit_length_minus_one(t)) + 1;
    for (int64_t k = col.k_lo - 2; k <= col.k_hi(); ++k) {
      if (length + s - k > 22) continue;
      CAPTURE(t);
      CAPTURE(k);
      CHECK(col.at(k) == brute_force_density(k, t));
    }
  }
}
