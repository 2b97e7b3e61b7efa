#include "doctest.h"

#include <stdexcept>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "digitsum/density.hpp"
#include "digitsum/digits.hpp"
#include "digitsum/verify.hpp"

using namespace digitsum;

namespace {
Dyadic d(const char* s) { return Dyadic::parse(s); }
}  // namespace

TEST_CASE("delta column examples") {
  const DeltaColumn one = delta_column(1);
  CHECK(one.at(1) == d("1/2"));
  CHECK(one.at(0) == d("1/4"));
  CHECK(one.at(-1) == d("1/8"));
  CHECK(one.at(2) == 0);
  CHECK(one.at(-40) == Dyadic::pow2(-42));
  CHECK(delta(0, 7) == d("21/64"));
  CHECK(delta(3, 7) == d("1/8"));
  CHECK(delta(4, 15) == d("1/16"));
  CHECK(delta(0, 15) == d("85/256"));
  CHECK(delta(1, 1) == d("1/2"));
  CHECK(delta(2, 1) == 0);
  CHECK(delta(-3, 9) == d("7/128"));
  CHECK_THROWS(delta_column(0));
}

TEST_CASE("delta table") {
  const ReferenceTable& table = delta_reference_table();
  for (uint64_t t = 1; t <= 15; ++t) {
    for (size_t r = 0; r < table.rows.size(); ++r) {
      const int64_t k = table.k_top - static_cast<int64_t>(r);
      CAPTURE(t);
      CAPTURE(k);
      CHECK(delta(k, t) == d(table.rows[r][t - 1].c_str()));
    }
  }
}

TEST_CASE("phi table") {
  const ReferenceTable& table = phi_reference_table();
  for (uint64_t t = 1; t <= 15; ++t) {
    for (size_t r = 0; r < table.rows.size(); ++r) {
      const int64_t k = table.k_top - static_cast<int64_t>(r);
      CAPTURE(t);
      CAPTURE(k);
      CHECK(phi(k, t) == d(table.rows[r][t - 1].c_str()));
    }
  }
}

TEST_CASE("c_t values") {
  const char* expected[] = {"1", "3/4", "3/4", "11/16", "3/4", "5/8", "11/16", "43/64", "3/4", "11/16", "5/8", "19/32", "11/16", "19/32"};
  for (uint64_t t = 0; t < 14; ++t) CHECK(ct(t) == d(expected[t]));
  CHECK(ct(parse_binary("111101111011110111101111011111")) == d("18169025645289/2^45"));
  CHECK(ct_tilde(3) == d("3/8"));
  CHECK(ct_tilde(0) == 0);
}

TEST_CASE("phi column and p_t") {
  CHECK(phi(1, 3) == d("1/2"));
  CHECK(phi(-1, 3) == d("1/2"));
  CHECK(phi(-2, 5) == d("1/4"));
  CHECK(pt(1) == 1);
  CHECK(pt(3) == d("1/2"));
  CHECK(phi_column(9).k_min == -3);
}

TEST_CASE("delta from phi") {
  CHECK(delta_from_phi(1) == delta_column(1));
  CHECK(delta_from_phi(5).at(0) == d("1/8"));
  CHECK(delta_from_phi(1025) == delta_column(1025));
}

TEST_CASE("phi reduction") {
  CHECK(phi_reduction_check(1, 0));
  CHECK(phi_reduction_check(1, 1));
  CHECK(phi_reduction_check(3, 2));
  CHECK(phi(2, 49) == d("1/4"));
}

TEST_CASE("brute force density") {
  CHECK(brute_force_density(0, 1) == d("1/4"));
  CHECK(brute_force_density(1, 2) == d("1/2"));
  CHECK(brute_force_density(-3, 1) == d("1/32"));
  CHECK(brute_force_density(5, 3) == 0);
  CHECK_THROWS_AS(brute_force_density(-30, 1), std::length_error);
  CHECK(brute_force_density(-20, 1) == Dyadic::pow2(-22));
}

TEST_CASE("scan examples") {
  const ScanReport big = scan_range(1, 16384);
  CHECK(big.violations_c.empty());
  CHECK(big.violations_ctilde.empty());
  CHECK(big.checked == 16383);
  REQUIRE(big.min_c);

  const ScanReport small = scan_range(1, 16);
  REQUIRE(small.min_c);
  CHECK(small.min_c->t == 11);
  CHECK(small.min_c->value == d("19/32"));

  const ScanReport one = scan_range(1, 2);
  CHECK(one.min_c->t == 1);
  CHECK(one.min_c->value == d("3/4"));
  CHECK(one.max_ctilde->value == d("1/2"));
}

TEST_CASE("scan epsilon counts and merge") {
  const std::vector<Dyadic> eps = {d("1/8"), d("1/4")};
  const ScanReport whole = scan_range(1, 9000, eps);
  ScanReport left = scan_range(1, 5000, eps);
  left.merge(scan_range(5000, 9000, eps));
  CHECK(left == whole);
  REQUIRE(whole.epsilon_counts.size() == 2);
  CHECK(whole.epsilon_counts[0].count <= whole.epsilon_counts[1].count);
  uint64_t manual = 0;
  for_each_ct(1, 9000, [&](uint64_t, const Dyadic& c, const Dyadic&) { manual += c > d("1/2") && c < d("5/8"); });
  CHECK(whole.epsilon_counts[0].count == manual);
  ScanReport gap = scan_range(1, 10);
  CHECK_THROWS(gap.merge(scan_range(11, 20)));
}

TEST_CASE("scan matches single columns") {
  std::vector<uint64_t> seen;
  for_each_ct(4090, 4200, [&](uint64_t t, const Dyadic& c, const Dyadic& c2) {
    seen.push_back(t);
    CHECK(c == ct(t));
    CHECK(c2 == ct_tilde(t));
  });
  REQUIRE(seen.size() == 110);
  CHECK(seen.front() == 4090);
  CHECK(std::is_sorted(seen.begin(), seen.end()));
}

TEST_CASE("range sums agree across workers") {
  CHECK(range_sums(0, 70000, 1) == range_sums(0, 70000, 3));
  const RangeSums s = range_sums(2, 4);
  CHECK(s.count == 2);
  CHECK(s.sum_c == d("23/16"));
}

TEST_CASE("min p_t") {
  const Witness w = min_pt(1, 1024);
  CHECK(w.t == 3);
  CHECK(w.value == d("1/2"));
}

TEST_CASE("checkpoint resume") {
  const auto path = std::filesystem::temp_directory_path() / "digitsum_checkpoint_test.txt";
  std::filesystem::remove(path);
  ScanOptions options;
  options.checkpoint_path = path.string();
  const ScanReport first = scan_range(1, 20000, {}, options);
  const auto last = read_checkpoint(path.string());
  REQUIRE(last);
  CHECK(resume_point(*last) == 20480);
  CHECK(checkpoint_line(5) == "last_completed_prefix=101");
  const ScanReport resumed = scan_range(1, 30000, {}, options);
  CHECK(resumed.t_lo == 20480);
  CHECK(resumed.checked == 30000 - 20480);
  const ScanReport done = scan_range(1, 20000, {}, options);
  CHECK(done.checked == 0);
  std::filesystem::remove(path);
  CHECK(first.violations_c.empty());
  CHECK_FALSE(read_checkpoint(path.string()));
}
