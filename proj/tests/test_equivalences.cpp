#include "doctest.h"

#include <stdexcept>

#include "digitsum/density.hpp"
#include "digitsum/digits.hpp"
#include "digitsum/equivalences.hpp"

using namespace digitsum;

TEST_CASE("density via Pochhammer") {
  CHECK(density_via_pochhammer(1) == Dyadic::parse("3/4"));
  CHECK(density_via_pochhammer(3) == Dyadic::parse("11/16"));
  CHECK(density_via_pochhammer(0) == 1);
  CHECK_THROWS_AS(density_via_pochhammer(19), std::length_error);
}

TEST_CASE("column block polynomials") {
  CHECK(b_poly(1, 3) == Rational(1, 4));
  CHECK(b_poly(3, 3) == Rational(11, 16));
  CHECK(b_poly(0, 3) == 0);
  CHECK(b_poly(0, 1000) == 0);
  CHECK_THROWS(b_poly(5, 3));
}

TEST_CASE("row block polynomials") {
  CHECK(a_poly(1, 3) == 4);
  CHECK(row_count_direct(3, 1) == 4);
  CHECK(a_poly(2, 4) == 3);
  CHECK(row_count_direct(4, 2) == 3);
  CHECK(a_poly(1, 0) == 1);
  CHECK_THROWS(a_poly(0, 3));
  CHECK_THROWS_AS(row_count_direct(uint64_t{1} << 15, 1), std::length_error);
}

TEST_CASE("block term tables") {
  for (int alpha = 1; alpha <= 4; ++alpha) {
    for (auto family : {BlockFamily::column, BlockFamily::row}) {
      const auto& terms = block_terms(family, alpha);
      REQUIRE_FALSE(terms.empty());
      for (const auto& term : terms) {
        CHECK(term.coeff > 0);
        for (const auto& w : term.words) CHECK(w.find('1') != std::string::npos);
      }
    }
  }
  CHECK(block_terms(BlockFamily::column, 1).size() == 1);
}

TEST_CASE("column recount") {
  CHECK(column_count_direct(3, 3) == 11);
  for (uint64_t t = 1; t < 64; ++t) {
    for (int alpha = 1; alpha <= 4; ++alpha) {
      const unsigned lambda = static_cast<unsigned>(alpha) + bit_length_minus_one(t);
      CHECK(b_poly(alpha, t) * (Rational(1) << lambda) == Rational(column_count_direct(t, alpha)));
    }
  }
}

TEST_CASE("Zabek periods") {
  CHECK(zabek_period(1, 1) == 2);
  CHECK(zabek_period(2, 2) == 8);
  CHECK(zabek_period(4, 1) == 8);
  CHECK_THROWS_AS(zabek_period(uint64_t{1} << 20, 4), std::length_error);
}

TEST_CASE("b polynomial recovers c_t") {
  for (uint64_t t = 1; t < 1024; ++t) {
    const unsigned s = sum_of_digits(t);
    if (s > 3) continue;
    CAPTURE(t);
    CHECK(b_poly(static_cast<int>(s) + 1, t) == static_cast<Rational>(ct(t)));
  }
}

TEST_CASE("a polynomial equals row count") {
  for (uint64_t t = 0; t < 1024; ++t) {
    for (int alpha = 1; alpha <= 4; ++alpha) {
      CAPTURE(t);
      CAPTURE(alpha);
      CHECK(a_poly(alpha, t) == Rational(row_count_direct(t, alpha)));
    }
  }
}

TEST_CASE("b polynomial values are nonnegative") {
  for (uint64_t t = 1; t < 4096; t += 7) {
    for (int alpha = 0; alpha <= 4; ++alpha) CHECK(b_poly(alpha, t) >= 0);
  }
}
