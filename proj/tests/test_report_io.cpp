#include "doctest.h"

#include <stdexcept>

#include "digitsum/report_io.hpp"

using namespace digitsum;

TEST_CASE("scan report round trip") {
  const ScanReport r = scan_range(1, 5000, {Dyadic::pow2(-3), Dyadic::parse("3/16")});
  const std::string text = to_json(r);
  CHECK(text.find("\"min_c\"") != std::string::npos);
  const ScanReport back = scan_report_from_json(text);
  CHECK(back == r);
  CHECK(to_json(back) == text);
}

TEST_CASE("scan report with violations round trips") {
  ScanReport r;
  r.t_lo = 5;
  r.t_hi = 9;
  r.checked = 4;
  r.violations_c = {{7, Dyadic::parse("1/2")}};
  r.violations_ctilde = {{8, Dyadic::parse("17/32")}};
  const ScanReport back = scan_report_from_json(to_json(r));
  CHECK(back == r);
  CHECK_FALSE(back.min_c);
  const std::string csv = to_csv(r);
  CHECK(csv == "kind,t,value,decimal\nviolation_c,7,1/2^1,0.500000000000\nviolation_ctilde,8,17/2^5,0.531250000000\n");
}

TEST_CASE("moment report round trip") {
  const MomentReport r = empirical_moments(9);
  const MomentReport back = moment_report_from_json(to_json(r));
  CHECK(back.lambda == r.lambda);
  CHECK(back.mean_c == r.mean_c);
  CHECK(back.mean_ctilde == r.mean_ctilde);
  CHECK(back.second_c == r.second_c);
  CHECK(back.second_ctilde == r.second_ctilde);
  CHECK(back.variance_c == r.variance_c);
  CHECK(back.variance_ctilde == r.variance_ctilde);
  CHECK(back.asym_residuals == r.asym_residuals);
  CHECK(to_json(back) == to_json(r));
  CHECK(to_csv(r).find("mean_c,") != std::string::npos);
}

TEST_CASE("malformed input") {
  CHECK_THROWS_AS(scan_report_from_json("{"), std::invalid_argument);
  CHECK_THROWS(scan_report_from_json("{}"));
  CHECK_THROWS(moment_report_from_json("[1,2]"));
}

TEST_CASE("column output") {
  const std::string json = to_json(delta_column(3));
  CHECK(json.find("\"value\": \"5/2^4\"") != std::string::npos);
  CHECK(to_csv(delta_column(1)) == "k,value,decimal\n1,1/2^1,0.500000000000\n");
  CHECK(to_csv(phi_column(3)) == "k,value,decimal\n1,1/2^1,0.500000000000\n0,0,0.000000000000\n-1,1/2^1,0.500000000000\n");
  CHECK(to_json(mean_profile(2)).find("\"M\"") != std::string::npos);
  CHECK(to_json(chebyshev_window_count(6, Dyadic::pow2(-2))).find("\"joint\"") != std::string::npos);
}
