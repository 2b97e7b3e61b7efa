#include "doctest.h"

#include <stdexcept>

#include <cmath>

#include "digitsum/density.hpp"
#include "digitsum/moments.hpp"

using namespace digitsum;

TEST_CASE("mean closed form") {
  CHECK(mean_closed_form(1, MeanVariant::c) == Dyadic::parse("23/32"));
  CHECK(mean_closed_form(0, MeanVariant::c) == Dyadic::parse("3/4"));
  CHECK(mean_closed_form(1, MeanVariant::ctilde) < Dyadic::pow2(-1));
  CHECK(Dyadic::pow2(-1) < mean_closed_form(1, MeanVariant::c));
  for (uint64_t lambda = 0; lambda <= 16; ++lambda) {
    const MomentReport r = empirical_moments(lambda);
    CAPTURE(lambda);
    CHECK(r.mean_c == mean_closed_form(lambda, MeanVariant::c));
    CHECK(r.mean_ctilde == mean_closed_form(lambda, MeanVariant::ctilde));
  }
}

TEST_CASE("mean profile") {
  const ProfileReport p0 = mean_profile(0);
  CHECK(p0.at(1) == Dyadic::parse("1/2"));
  CHECK(p0.at(0) == Dyadic::parse("1/4"));
  CHECK(p0.total() == 1);
  const ProfileReport p = mean_profile(400);
  CHECK(p.total() == 1);
  const double scaled = p.at(0).to_double() * std::sqrt(std::numbers::pi * 400);
  CHECK(scaled > 0.9);
  CHECK(scaled < 1.1);
  for (size_t l = 1; l < p.M.size(); ++l) CHECK(p.M[l - 1] <= p.M[l]);
  const ProfileReport p5 = mean_profile(5);
  for (int64_t k = p5.k_lo - 3; k <= 6; ++k) {
    Dyadic avg;
    for (uint64_t t = 32; t < 64; ++t) avg += delta(k, t);
    CHECK(p5.at(k) == avg.mul_pow2(-5));
  }
}

TEST_CASE("binomial identity") {
  CHECK(binomial_identity_check(0));
  CHECK(binomial_identity_check(2));
  CHECK(binomial_identity_check(30));
}

TEST_CASE("empirical moments") {
  const MomentReport one = empirical_moments(1);
  CHECK(one.second_c == Rational(265, 512));
  CHECK(one.variance_c == Rational(1, 1024));
  CHECK(one.mean_c == Dyadic::parse("23/32"));
  CHECK(empirical_moments(3).second_c == diagonal_moments(3).second_c);
  CHECK(empirical_moments(12, 1).second_ctilde == empirical_moments(12, 4).second_ctilde);
  CHECK_THROWS_AS(empirical_moments(23), std::length_error);
}

TEST_CASE("second moments through the diagonal") {
  for (uint64_t lambda = 0; lambda <= 10; ++lambda) {
    const MomentReport e = empirical_moments(lambda);
    const MomentReport d = diagonal_moments(lambda);
    CAPTURE(lambda);
    CHECK(e.second_c == d.second_c);
    CHECK(e.second_ctilde == d.second_ctilde);
    CHECK(d.variance_c >= 0);
  }
}

TEST_CASE("asymptotic comparators") {
  CHECK(asymptotic_comparators(1, Formula::sigma) == doctest::Approx(std::sqrt(43.0) / (12 * std::sqrt(std::numbers::pi))));
  CHECK(asymptotic_comparators(1, Formula::sigma) == doctest::Approx(0.308303).epsilon(1e-6));
  CHECK(asymptotic_comparators(1, Formula::special_c) - 0.5 == doctest::Approx(0.172747).epsilon(1e-6));
  CHECK(asymptotic_comparators(1e12, Formula::mean_c) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(parse_formula("secmom_ctilde") == Formula::secmom_ctilde);
  CHECK(formula_name(Formula::special_c) == "special_c");
  CHECK_THROWS_AS(parse_formula("nope"), std::invalid_argument);
  CHECK_THROWS_AS(asymptotic_comparators(0.5, Formula::mean_c), std::domain_error);
}

TEST_CASE("variance against the asymptotic constant") {
  for (uint64_t lambda = 20; lambda <= 60; lambda += 4) {
    const MomentReport r = diagonal_moments(lambda);
    CAPTURE(lambda);
    CHECK(std::abs(r.asym_residuals.at("variance_ratio_c") - 1) <= 0.35);
  }
}

TEST_CASE("mean inequalities") {
  const Dyadic half = Dyadic::pow2(-1);
  for (uint64_t lambda = 1; lambda <= 200; ++lambda) {
    CHECK(mean_closed_form(lambda, MeanVariant::ctilde) < half);
    CHECK(half < mean_closed_form(lambda, MeanVariant::c));
  }
}

TEST_CASE("Chebyshev window") {
  const WindowCount w = chebyshev_window_count(14, Dyadic::pow2(-2));
  CHECK(to_double(w.fraction()) >= 0.99);
  CHECK(w.total == 16384);
  const WindowCount small = chebyshev_window_count(3, Dyadic::pow2(-1));
  CHECK(small.c_fraction() == 1);
  CHECK(chebyshev_window_count(8, Dyadic()).joint == 0);
  const WindowCount a = chebyshev_window_count(10, Dyadic::pow2(-3), 1);
  const WindowCount b = chebyshev_window_count(10, Dyadic::pow2(-3), 4);
  CHECK(a.joint == b.joint);
  CHECK(a.c_side == b.c_side);
  CHECK(a.ctilde_side == b.ctilde_side);
}
