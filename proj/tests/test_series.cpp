#include "doctest.h"

#include <stdexcept>

#include "digitsum/density.hpp"
#include "digitsum/series.hpp"

using namespace digitsum;

namespace {
const Polynomial x = Polynomial::variable(0);
const Polynomial y = Polynomial::variable(1);
const Polynomial z = Polynomial::variable(2);
}  // namespace

TEST_CASE("polynomial basics") {
  const Polynomial p = (1 - 2 * x) * (1 + x);
  CHECK(p.coeff({1, 0, 0}) == -1);
  CHECK(p.coeff({2, 0, 0}) == -2);
  CHECK(p.degree(0) == 2);
  CHECK(p.degree(1) == 0);
  CHECK(Polynomial().degree(0) == -1);
  CHECK(p.nvars() == 1);
  CHECK((x * y * z).nvars() == 3);
  CHECK(p.derivative(0) == -1 - 4 * x);
  CHECK((1 + x).pow(3).coeff({2, 0, 0}) == 3);
  CHECK(p.evaluate({Rational(1, 2), 0, 0}) == 0);
  CHECK((p - p).is_zero());
}

TEST_CASE("expansion examples") {
  const TruncSeries a = expand({3, 1, {2 - y, 2 - z}}, {0, 4, 4});
  CHECK(a.at({0, 0, 0}) == Rational(1, 4));
  CHECK(a.at({0, 3, 1}) == Rational(1, 64));

  const TruncSeries g = expand({1, 1, {1 - 2 * x}}, {20, 0, 0});
  for (int n = 0; n <= 20; ++n) CHECK(g[n] == Rational(1) << n);

  const TruncSeries third = expand({1, 1, {3 - x}}, {5, 0, 0});
  CHECK(third[5] == Rational(1, 729));

  CHECK_THROWS_AS(expand({1, 1, {x}}, {3, 0, 0}), std::domain_error);
}

TEST_CASE("truncated series access and arithmetic") {
  TruncSeries s(2, {3, 3, 0}, 3);
  CHECK(s.contains({1, 2, 0}));
  CHECK_FALSE(s.contains({2, 2, 0}));
  CHECK_THROWS_AS(s.at({2, 2, 0}), std::out_of_range);
  CHECK_THROWS_AS(s.at({4, 0, 0}), std::out_of_range);
  s.at({0, 0, 0}) = 2;
  s.at({1, 0, 0}) = 1;
  const TruncSeries inv = s.inverse();
  const TruncSeries one = s * inv;
  CHECK(one.at({0, 0, 0}) == 1);
  one.for_each([](const Exponent& e, const Rational& c) {
    if (e != Exponent{0, 0, 0}) CHECK(c == 0);
  });
  CHECK_THROWS_AS(TruncSeries(1, {4, 0, 0}).inverse(), std::domain_error);
}

TEST_CASE("trivariate A and F examples") {
  const TruncSeries A = expand(trivariate_A(), {1, 5, 5});
  for (int k = 0; k <= 5; ++k) {
    for (int l = 0; l <= 5; ++l) CHECK(A.at({0, k, l}) == Rational(1) / (Rational(1) << (2 + k + l)));
  }
  CHECK(A.at({1, 0, 0}) == Rational(1, 4));
  const TruncSeries F = expand(trivariate_F(), {1, 2, 2});
  CHECK(F.at({0, 0, 0}) == Rational(1, 4));
  CHECK(F.at({1, 2, 2}) == Rational(265, 64));
  CHECK(trivariate_denominator().constant_term() == 1);
  CHECK(trivariate_denominator().evaluate({Rational(1, 8), 1, 1}) == 0);
}

TEST_CASE("diagonal of F") {
  CHECK(diagonal_F(1, 1) == Rational(265, 64));
  CHECK(diagonal_F(0, 0) == Rational(1, 4));
  const auto seq = diagonal_F_sequence(12, 1);
  CHECK(seq[12] == diagonal_F(12, 1));
  CHECK_THROWS_AS(diagonal_F(61, 1), std::length_error);
}

TEST_CASE("implicit root") {
  const TruncSeries f = implicit_root_series(4);
  CHECK(f.at({0, 0, 0}) == Rational(1, 8));
  CHECK(f.at({1, 0, 0}) == Rational(-1, 8));
  CHECK(f.at({2, 0, 0}) == Rational(3, 32));
  CHECK(f.at({2, 2, 0}) == Rational(13, 192));
  const TruncSeries g = log_root_series(4);
  CHECK(g.at({2, 2, 0}) == Rational(-1, 48));
  CHECK(g.at({0, 0, 0}) == 0);
  CHECK_THROWS(implicit_root_series(13));
}

TEST_CASE("implicit root satisfies the denominator equation") {
  const int D = 6;
  const TruncSeries f = implicit_root_series(D);
  TruncSeries X(2, {D, D, 0}, D), Y(2, {D, D, 0}, D), Z(2, {D, D, 0}, D);
  f.for_each([&](const Exponent& e, const Rational& c) { X.at(e) = c; });
  Y.at({0, 0, 0}) = 1;
  Y.at({1, 0, 0}) = 1;
  Z.at({0, 0, 0}) = 1;
  Z.at({0, 1, 0}) = 1;
  TruncSeries sum(2, {D, D, 0}, D);
  const Polynomial H = trivariate_denominator();
  for (const auto& [e, c] : H.terms()) {
    TruncSeries term(2, {D, D, 0}, D);
    term.at({0, 0, 0}) = c;
    for (int i = 0; i < e[0]; ++i) term = term * X;
    for (int i = 0; i < e[1]; ++i) term = term * Y;
    for (int i = 0; i < e[2]; ++i) term = term * Z;
    sum = sum + term;
  }
  CHECK(sum.is_zero());
}

TEST_CASE("special sequence") {
  const auto terms = special_sequence_columns(3);
  REQUIRE(terms.size() == 4);
  CHECK(terms[0].t == 0);
  CHECK(terms[0].c == 1);
  CHECK(terms[1].t == 1);
  CHECK(terms[1].c == Dyadic::parse("3/4"));
  CHECK(terms[2].t == 5);
  CHECK(terms[2].c == Dyadic::parse("5/8"));
  CHECK(terms[3].t == 21);
  CHECK(terms[3].c == ct(21));
  CHECK_THROWS_AS(special_sequence_columns(11, 10), std::length_error);
}

TEST_CASE("H series methods agree") {
  const TruncSeries rec = H_series(120, HMethod::recurrence);
  CHECK(rec[0] == 1);
  CHECK(rec[1] == Rational(3, 4));
  CHECK(rec[2] == Rational(5, 8));
  CHECK(H_series(120, HMethod::diagonal) == rec);
  CHECK(H_series(120, HMethod::closed_form) == rec);
  const auto cols = special_sequence_columns(30);
  for (int j = 0; j <= 30; ++j) CHECK(rec[j] == static_cast<Rational>(cols[j].c));
  CHECK_THROWS_AS(H_series(501, HMethod::diagonal), std::length_error);
}

TEST_CASE("minimal polynomial") {
  CHECK(minimal_polynomial_residual(10).is_zero());
  CHECK(minimal_polynomial_residual(100).is_zero());
  TruncSeries H = H_series(10, HMethod::recurrence);
  H[1] += 1;
  CHECK_FALSE(minimal_polynomial_residual(H).is_zero());
}

TEST_CASE("closed form") {
  CHECK(closed_form_H_check(5));
  CHECK(closed_form_H_check(100));
  const TruncSeries H = closed_form_H_series(5);
  CHECK(H[0] == 1);
  CHECK(H[1] == Rational(3, 4));
  CHECK(H[2] == Rational(5, 8));
}

TEST_CASE("series square root") {
  TruncSeries s = TruncSeries::univariate(8);
  s[0] = 16;
  s[1] = -8;
  s[2] = 1;
  const TruncSeries r = sqrt_series(s, -4);
  CHECK(r[0] == -4);
  CHECK(r[1] == 1);
  CHECK(r[2] == 0);
  CHECK_THROWS_AS(sqrt_series(s, 3), std::domain_error);
}

TEST_CASE("bivariate A") {
  const TruncSeries A = expand(bivariate_A(), {6, 6, 0});
  for (int j = 0; j <= 6; ++j) {
    const uint64_t t = j == 0 ? 0 : ((uint64_t{1} << (2 * j)) - 1) / 3;
    for (int k = 0; k <= 6; ++k) {
      if (t == 0) continue;
      CAPTURE(j);
      CAPTURE(k);
      CHECK(A.at({j, k, 0}) == static_cast<Rational>(delta(j - k, t)));
    }
  }
}

TEST_CASE("series csv") {
  const std::string csv = to_csv(expand({1, 1, {2 - x}}, {2, 0, 0}));
  CHECK(csv.find("e0,e1,e2,value,decimal") == 0);
  CHECK(csv.find("2,0,0,1/8,0.125000000000") != std::string::npos);
}
