#include "doctest.h"

#include <stdexcept>

#include <set>

#include "digitsum/density.hpp"
#include "digitsum/hyperbinary.hpp"

using namespace digitsum;

namespace {
std::vector<std::string> words(uint64_t n) {
  std::vector<std::string> out;
  for (const auto& e : enumerate_proper(n)) out.push_back(e.to_string());
  return out;
}
}  // namespace

TEST_CASE("proper expansions") {
  CHECK(words(4) == std::vector<std::string>{"100", "12", "20"});
  CHECK(words(0) == std::vector<std::string>{""});
  CHECK(words(1) == std::vector<std::string>{"1"});
  for (const auto& e : enumerate_proper(4)) CHECK(e.value() == 4);
  CHECK_THROWS_AS(enumerate_proper(uint64_t{1} << 21), std::length_error);
}

TEST_CASE("h counts examples") {
  const HyperbinaryCounts five = h_counts(5);
  CHECK(five.counts.size() == 3);
  CHECK(five.at(0, 2) == 1);
  CHECK(five.at(1, 1) == 1);
  CHECK(five.at(1, 0) == 1);
  CHECK(five.at(2, 0) == 0);

  const HyperbinaryCounts one = h_counts(1);
  CHECK(one.counts.size() == 1);
  CHECK(one.at(0, 0) == 1);
  CHECK(h_counts(2).counts == one.counts);
}

TEST_CASE("phi from expansions") {
  CHECK(phi_from_hyperbinary(5, 1) == Dyadic::parse("1/2"));
  CHECK(phi_from_hyperbinary(5, -2) == Dyadic::parse("1/4"));
  CHECK(corollary_sum(1) == 1);
  CHECK(corollary_sum(3) == Dyadic::parse("1/2"));
  CHECK(corollary_sum(5) == Dyadic::parse("3/4"));
}

TEST_CASE("both counting methods agree and rebuild phi") {
  for (uint64_t t = 1; t <= 1024; ++t) {
    const HyperbinaryCounts rec = h_counts(t, HyperMethod::recurrence);
    const HyperbinaryCounts en = h_counts(t, HyperMethod::enumerate);
    CAPTURE(t);
    CHECK(rec == en);
    CHECK(rec.weighted_total() == 1);
    const PhiColumn col = phi_column(t);
    for (int64_t k = col.k_min - 2; k <= col.k_max() + 2; ++k) CHECK(phi_from_counts(rec, k) == col.at(k));
    const auto ex = enumerate_proper(t - 1);
    CHECK(ex.size() == rec.expansions());
    CHECK(std::set<HyperExpansion>(ex.begin(), ex.end()).size() == ex.size());
  }
}

TEST_CASE("corollary sum equals p_t") {
  for (uint64_t t = 1; t <= 4096; ++t) {
    CAPTURE(t);
    CHECK(corollary_sum(t) == pt(t));
    CHECK(pt(t) >= Dyadic::pow2(-1));
  }
}
