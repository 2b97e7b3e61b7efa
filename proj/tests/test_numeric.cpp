#include "doctest.h"

#include <stdexcept>

#include "digitsum/numeric.hpp"

using namespace digitsum;

namespace {
Dyadic d(const char* s) { return Dyadic::parse(s); }
}  // namespace

TEST_CASE("dyadic arithmetic examples") {
  CHECK(d("1/2") + d("1/4") == d("3/4"));
  CHECK(d("1/2").halve() == d("1/4"));
  CHECK(d("5/16") * d("5/16") == d("25/256"));
  CHECK(d("1/2") - d("3/4") == d("-1/4"));
  CHECK(d("1/4") < d("1/2"));
  CHECK(d("-1/8") < Dyadic());
}

TEST_CASE("dyadic canonical form") {
  const Dyadic x = Dyadic::from_parts(i128{12}, 5);
  CHECK(x.mantissa() == 3);
  CHECK(x.scale() == 3);
  CHECK(x.to_string() == "3/2^3");
  CHECK(Dyadic::from_parts(i128{0}, 7).scale() == 0);
  CHECK(Dyadic().to_string() == "0");
  CHECK(Dyadic(6).to_string() == "6");
  CHECK(Dyadic::from_parts(i128{3}, -2) == Dyadic(12));
  CHECK(d("11/16").to_fraction_string() == "11/16");
  CHECK(d("11/16").to_decimal(4) == "0.6875");
}

TEST_CASE("dyadic parse forms") {
  CHECK(d("11/2^4") == d("11/16"));
  CHECK(d("-3") == Dyadic(-3));
  CHECK(d("0") == Dyadic());
  CHECK_THROWS_AS(Dyadic::parse("1/3"), std::domain_error);
  CHECK_THROWS(Dyadic::parse("abc"));
}

TEST_CASE("dyadic promotion past 128 bits") {
  Dyadic x = Dyadic::pow2(-1) + Dyadic::pow2(-200);
  CHECK_FALSE(x.is_small());
  x -= Dyadic::pow2(-200);
  CHECK(x.is_small());
  CHECK(x == d("1/2"));
  const Dyadic big = Dyadic(3).mul_pow2(150);
  CHECK((big * big).mantissa() == 9);
  CHECK((big * big).scale() == -300);
}

TEST_CASE("dyadic and rational conversions") {
  const Rational q = d("21/64");
  CHECK(q == Rational(21, 64));
  CHECK(Dyadic::from_rational(Rational(5, 8)) == d("5/8"));
  CHECK_THROWS_AS(Dyadic::from_rational(Rational(1, 3)), std::domain_error);
  CHECK(is_dyadic(Rational(7, 1024)));
  CHECK_FALSE(is_dyadic(Rational(13, 192)));
  CHECK(to_string(Rational(13, 192)) == "13/192");
  CHECK(parse_rational("-13/192") == Rational(-13, 192));
}

TEST_CASE("divide_exact") {
  CHECK(divide_exact(d("3/4"), 3) == d("1/4"));
  CHECK(divide_exact(d("9/8"), -6) == d("-3/16"));
  CHECK_THROWS_AS(divide_exact(d("1/2"), 3), std::domain_error);
}

TEST_CASE("binomial_exact examples") {
  CHECK(binomial_exact(4, 2) == 6);
  CHECK(binomial_exact(10, 5) == 252);
  CHECK(binomial_exact(0, 1) == 0);
  CHECK(binomial_exact(5, -1) == 0);
  CHECK(binomial_exact(100, 50) == BigInt("100891344545564193334812497256"));
}

TEST_CASE("128-bit helpers") {
  const i128 v = (i128{1} << 100) + 7;
  CHECK(to_i128(to_bigint(v)) == v);
  CHECK(fits_i128(to_bigint(v)));
  BigInt huge = 1;
  huge <<= 130;
  CHECK_FALSE(fits_i128(huge));
  CHECK(to_string(i128{-42}) == "-42");
}
