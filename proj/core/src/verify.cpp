#include "digitsum/verify.hpp"

#include <chrono>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <iomanip>
#include <sstream>

#include "digitsum/density.hpp"
#include "digitsum/digits.hpp"
#include "digitsum/equivalences.hpp"
#include "digitsum/hyperbinary.hpp"
#include "digitsum/moments.hpp"
#include "digitsum/report_io.hpp"
#include "digitsum/series.hpp"

namespace digitsum {

const ReferenceTable& delta_reference_table() {
  static const ReferenceTable table{
      4,
      {
          {"0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "1/16"},
          {"0", "0", "0", "0", "0", "0", "1/8", "0", "0", "0", "1/8", "0", "1/8", "1/8", "1/32"},
          {"0", "0", "1/4", "0", "1/4", "1/4", "1/16", "0", "1/4", "1/4", "1/8", "1/4", "1/8", "1/16", "5/64"},
          {"1/2", "1/2", "1/8", "1/2", "1/4", "1/8", "5/32", "1/2", "1/4", "1/4", "3/16", "1/8", "3/16", "5/32",
           "21/128"},
          {"1/4", "1/4", "5/16", "1/4", "1/8", "5/16", "21/64", "1/4", "3/16", "1/8", "5/32", "5/16", "5/32", "21/64",
           "85/256"},
          {"1/8", "1/8", "5/32", "1/8", "3/16", "5/32", "21/128", "1/8", "3/32", "3/16", "13/64", "5/32", "13/64",
           "21/128", "85/512"},
          {"1/16", "1/16", "5/64", "1/16", "3/32", "5/64", "21/256", "1/16", "7/64", "3/32", "13/128", "5/64", "13/128",
           "21/256", "85/1024"},
          {"1/32", "1/32", "5/128", "1/32", "3/64", "5/128", "21/512", "1/32", "7/128", "3/64", "13/256", "5/128",
           "13/256", "21/512", "85/2048"},
      }};
  return table;
}

const ReferenceTable& phi_reference_table() {
  static const ReferenceTable table{
      3,
      {
          {"0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "1/8"},
          {"0", "0", "0", "0", "0", "0", "1/4", "0", "0", "0", "1/4", "0", "1/4", "1/4", "0"},
          {"0", "0", "1/2", "0", "1/2", "1/2", "0", "0", "1/2", "1/2", "1/8", "1/2", "1/8", "0", "1/8"},
          {"1", "1", "0", "1", "1/4", "0", "1/4", "1", "1/4", "1/4", "1/4", "0", "1/4", "1/4", "1/4"},
          {"0", "0", "1/2", "0", "0", "1/2", "1/2", "0", "1/8", "0", "1/8", "1/2", "1/8", "1/2", "1/2"},
          {"0", "0", "0", "0", "1/4", "0", "0", "0", "0", "1/4", "1/4", "0", "1/4", "0", "0"},
          {"0", "0", "0", "0", "0", "0", "0", "0", "1/8", "0", "0", "0", "0", "0", "0"},
      }};
  return table;
}

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  // Records the first failure only; later ones rarely add information.
  void fail(const std::string& why) {
    if (pass) detail << why;
    pass = false;
  }
};

template <class Column>
void compare_table(const ReferenceTable& table, Column (*column)(uint64_t), const char* what, Outcome& out) {
  size_t cells = 0;
  for (uint64_t t = 1; t <= 15; ++t) {
    const Column col = column(t);
    for (size_t r = 0; r < table.rows.size(); ++r) {
      const int64_t k = table.k_top - static_cast<int64_t>(r);
      const Dyadic want = Dyadic::parse(table.rows[r][t - 1]);
      ++cells;
      if (col.at(k) != want) {
        out.fail(std::string(what) + "(" + std::to_string(k) + "," + std::to_string(t) + ") = " +
                 col.at(k).to_fraction_string() + ", expected " + want.to_fraction_string());
      }
    }
  }
  if (out.pass) out.detail << cells << " entries match";
}

Outcome delta_table() {
  Outcome out;
  const auto start = Clock::now();
  compare_table(delta_reference_table(), &delta_column, "delta", out);
  const double s = since(start);
  if (s >= 1) out.fail("runtime " + std::to_string(s) + " s");
  return out;
}

Outcome phi_table() {
  Outcome out;
  const auto start = Clock::now();
  compare_table(phi_reference_table(), &phi_column, "phi", out);
  const double s = since(start);
  if (s >= 1) out.fail("runtime " + std::to_string(s) + " s");
  return out;
}

Outcome ct_prefix() {
  static const char* const expected[] = {"1",    "3/4",  "3/4",  "11/16", "3/4",   "5/8",  "11/16",
                                         "43/64", "3/4", "11/16", "5/8",  "19/32", "11/16", "19/32"};
  Outcome out;
  for (uint64_t t = 0; t < 14; ++t) {
    if (ct(t) != Dyadic::parse(expected[t])) {
      out.fail("c_" + std::to_string(t) + " = " + ct(t).to_fraction_string() + ", expected " + expected[t]);
    }
  }
  if (out.pass) out.detail << "c_0..c_13 match";
  return out;
}

Outcome extremal_point() {
  Outcome out;
  const uint64_t t = parse_binary("111101111011110111101111011111");
  const Dyadic want = Dyadic::parse("18169025645289/2^45");
  for (uint64_t u : {t, reverse_binary(t)}) {
    const auto start = Clock::now();
    const Dyadic c = ct(u);
    const double s = since(start);
    if (c != want) out.fail("c at " + to_binary(u) + " = " + c.to_string());
    if (s >= 0.01) out.fail("c at " + to_binary(u) + " took " + std::to_string(s) + " s");
  }
  if (out.pass) out.detail << "both equal " << want.to_string();
  return out;
}

Outcome conjecture_scan(const VerifyOptions& o) {
  Outcome out;
  const uint64_t hi = uint64_t{1} << o.scan_bits;
  ScanOptions scan_options;
  scan_options.workers = o.workers;
  const auto start = Clock::now();
  const ScanReport r = scan_range(0, hi, {}, scan_options);
  const double s = since(start);
  if (!r.violations_c.empty()) out.fail("c_t <= 1/2 at t = " + std::to_string(r.violations_c.front().t));
  if (!r.violations_ctilde.empty()) out.fail("c~_t > 1/2 at t = " + std::to_string(r.violations_ctilde.front().t));
  if (s >= 600) out.fail("scan took " + std::to_string(s) + " s");
  const Witness p = min_pt(1, uint64_t{1} << o.pt_bits, o.workers);
  if (p.value < Dyadic::pow2(-1)) out.fail("p_t < 1/2 at t = " + std::to_string(p.t));
  if (out.pass) {
    out.detail << r.checked << " t checked in " << std::fixed << std::setprecision(2) << s << " s, min c = "
               << r.min_c->value.to_string() << " at t = " << r.min_c->t << ", min p = " << p.value.to_string()
               << " at t = " << p.t;
  }
  return out;
}

Outcome oracles() {
  Outcome out;
  for (uint64_t t = 1; t <= 12; ++t) {
    const auto bound = static_cast<int64_t>(t) + 2;
    for (int64_t k = -bound; k <= bound; ++k) {
      if (delta(k, t) != brute_force_density(k, t)) {
        out.fail("delta(" + std::to_string(k) + "," + std::to_string(t) + ") differs from enumeration");
      }
    }
  }
  for (uint64_t t = 0; t <= 16; ++t) {
    if (density_via_pochhammer(t) != ct(t)) out.fail("Pochhammer density differs at t = " + std::to_string(t));
  }
  for (uint64_t t = 0; t < 256 && out.pass; ++t) {
    for (uint64_t n = 0; n < 65536; ++n) {
      if (nu2_binomial(n, t, BinomialMethod::legendre) != nu2_binomial(n, t, BinomialMethod::kummer)) {
        out.fail("valuation methods differ at n = " + std::to_string(n) + ", t = " + std::to_string(t));
        break;
      }
    }
  }
  if (out.pass) out.detail << "enumeration, Pochhammer and carry counts agree";
  return out;
}

Outcome block_formulas() {
  Outcome out;
  for (uint64_t t = 1; t < 1024; ++t) {
    for (int alpha = 1; alpha <= 4; ++alpha) {
      if (a_poly(alpha, t) != Rational(row_count_direct(t, alpha))) {
        out.fail("row count differs at t = " + std::to_string(t) + ", alpha = " + std::to_string(alpha));
      }
      const unsigned lambda = static_cast<unsigned>(alpha) + bit_length_minus_one(t);
      const Rational recount = Rational(column_count_direct(t, alpha)) / (Rational(1) << lambda);
      if (b_poly(alpha, t) != recount) {
        out.fail("column density differs at t = " + std::to_string(t) + ", alpha = " + std::to_string(alpha));
      }
    }
    const unsigned s = sum_of_digits(t);
    if (s <= 3 && b_poly(static_cast<int>(s) + 1, t) != static_cast<Rational>(ct(t))) {
      out.fail("b_{2^(s(t)+1)}(t) != c_t at t = " + std::to_string(t));
    }
  }
  for (uint64_t t = 1; t < 64; ++t) {
    for (int alpha = 1; alpha <= 4; ++alpha) {
      const uint64_t want = uint64_t{1} << (static_cast<unsigned>(alpha) + bit_length_minus_one(t));
      if (zabek_period(t, alpha) != want) {
        out.fail("period of C(n," + std::to_string(t) + ") mod 2^" + std::to_string(alpha) + " is " +
                 std::to_string(zabek_period(t, alpha)));
      }
    }
  }
  if (out.pass) out.detail << "row and column block formulas and periods agree";
  return out;
}

Outcome hyperbinary() {
  Outcome out;
  for (uint64_t t = 1; t <= 1024; ++t) {
    const PhiColumn col = phi_column(t);
    const HyperbinaryCounts h = h_counts(t);
    int64_t lo = col.k_min - 1, hi = col.k_max() + 1;
    for (const auto& [ij, n] : h.counts) {
      const int64_t k = static_cast<int64_t>(ij.first) - static_cast<int64_t>(ij.second);
      lo = std::min(lo, k);
      hi = std::max(hi, k);
    }
    for (int64_t k = lo; k <= hi; ++k) {
      if (phi_from_counts(h, k) != col.at(k)) {
        out.fail("phi(" + std::to_string(k) + "," + std::to_string(t) + ") differs from the expansion sum");
      }
    }
  }
  std::vector<std::string> words;
  std::vector<std::pair<int64_t, Dyadic>> weights;
  for (const auto& e : enumerate_proper(4)) {
    words.push_back(e.to_string());
    weights.emplace_back(static_cast<int64_t>(e.twos()) - static_cast<int64_t>(e.zeros()),
                         Dyadic::pow2(-static_cast<int64_t>(e.twos() + e.zeros())));
  }
  std::sort(weights.begin(), weights.end());
  const std::vector<std::pair<int64_t, Dyadic>> want = {
      {-2, Dyadic::pow2(-2)}, {0, Dyadic::pow2(-2)}, {1, Dyadic::pow2(-1)}};
  if (words != std::vector<std::string>{"100", "12", "20"}) out.fail("expansions of 4 differ");
  if (weights != want) out.fail("weights of the expansions of 4 differ");
  if (out.pass) out.detail << "t <= 1024 rebuilt; 4 = (100), (20), (12) with k = -2, 0, 1 and weights 1/4, 1/4, 1/2";
  return out;
}

Outcome generating_function() {
  Outcome out;
  constexpr int kLambda = 6, kBox = 16;
  const TruncSeries A = expand(trivariate_A(), {kLambda, kBox, kBox});
  size_t checked = 0;
  for (int lambda = 0; lambda <= kLambda; ++lambda) {
    std::vector<DeltaColumn> cols;
    for (uint64_t t = uint64_t{1} << lambda; t < uint64_t{2} << lambda; ++t) cols.push_back(delta_column(t));
    for (int k = 0; k <= kBox; ++k) {
      for (int l = 0; l <= kBox; ++l) {
        Dyadic sum;
        for (const auto& c : cols) sum += c.at(lambda + 1 - k) * c.at(lambda + 1 - l);
        ++checked;
        if (A.at({lambda, k, l}) != static_cast<Rational>(sum.mul_pow2(2 * lambda))) {
          out.fail("a_{" + std::to_string(lambda) + "," + std::to_string(k) + "," + std::to_string(l) + "} differs");
        }
      }
    }
  }
  for (uint64_t lambda = 0; lambda <= 10; ++lambda) {
    const MomentReport e = empirical_moments(lambda);
    const MomentReport d = diagonal_moments(lambda);
    if (e.second_c != d.second_c) out.fail("second moment of c differs at lambda = " + std::to_string(lambda));
    if (e.second_ctilde != d.second_ctilde) {
      out.fail("second moment of c~ differs at lambda = " + std::to_string(lambda));
    }
  }
  if (out.pass) out.detail << checked << " coefficients match; second moments exact for lambda <= 10";
  return out;
}

Outcome taylor_coefficients() {
  Outcome out;
  const std::vector<std::pair<Exponent, const char*>> f_terms = {
      {{0, 0, 0}, "1/8"},   {{1, 0, 0}, "-1/8"},  {{0, 1, 0}, "-1/8"},  {{2, 0, 0}, "3/32"},  {{0, 2, 0}, "3/32"},
      {{1, 1, 0}, "1/8"},   {{3, 0, 0}, "-1/16"}, {{0, 3, 0}, "-1/16"}, {{2, 1, 0}, "-3/32"}, {{1, 2, 0}, "-3/32"},
      {{4, 0, 0}, "5/128"}, {{0, 4, 0}, "5/128"}, {{3, 1, 0}, "1/16"},  {{1, 3, 0}, "1/16"},  {{2, 2, 0}, "13/192"}};
  const std::vector<std::pair<Exponent, const char*>> log_terms = {
      {{1, 0, 0}, "-1"},    {{0, 1, 0}, "-1"},    {{2, 0, 0}, "1/4"},   {{0, 2, 0}, "1/4"},  {{3, 0, 0}, "-1/12"},
      {{0, 3, 0}, "-1/12"}, {{4, 0, 0}, "1/32"},  {{0, 4, 0}, "1/32"},  {{2, 2, 0}, "-1/48"}};
  const TruncSeries f = implicit_root_series(4);
  const TruncSeries g = log_root_series(4);
  for (const auto& [e, v] : f_terms) {
    if (f.at(e) != parse_rational(v)) out.fail("f coefficient (" + std::to_string(e[0]) + "," + std::to_string(e[1]) + ")");
  }
  for (const auto& [e, v] : log_terms) {
    if (g.at(e) != parse_rational(v)) {
      out.fail("log f coefficient (" + std::to_string(e[0]) + "," + std::to_string(e[1]) + ")");
    }
  }
  if (g.at({0, 0, 0}) != 0) out.fail("log(8f) has a nonzero constant term");
  if (out.pass) out.detail << f_terms.size() << " coefficients of f and " << log_terms.size() << " of log f match";
  return out;
}

Outcome diagonal_asymptotics() {
  Outcome out;
  for (int offset : {1, 0}) {
    const Formula which = offset == 1 ? Formula::secmom_c : Formula::secmom_ctilde;
    const std::vector<Rational> d = diagonal_F_sequence(60, offset);
    double fitted = 0, worst = 0;
    for (int n = 20; n <= 60; ++n) {
      const double exact = to_double(d[n] * static_cast<Rational>(Dyadic::pow2(-3 * n)));
      const double scaled = std::abs(exact - asymptotic_comparators(n, which)) * std::pow(n, 2.5);
      if (n == 20) fitted = scaled;
      worst = std::max(worst, scaled / fitted);
    }
    if (worst > 2) out.fail("offset " + std::to_string(offset) + " exceeds the fitted constant by " + std::to_string(worst));
    if (out.pass) out.detail << (offset == 1 ? "" : ", ") << "offset " << offset << " max ratio " << std::setprecision(3) << worst;
  }
  return out;
}

Outcome mean_values() {
  Outcome out;
  for (uint64_t lambda = 0; lambda <= 16; ++lambda) {
    const MomentReport e = empirical_moments(lambda);
    if (e.mean_c != mean_closed_form(lambda, MeanVariant::c) ||
        e.mean_ctilde != mean_closed_form(lambda, MeanVariant::ctilde)) {
      out.fail("mean differs from enumeration at lambda = " + std::to_string(lambda));
    }
  }
  const Dyadic half = Dyadic::pow2(-1);
  for (uint64_t lambda = 1; lambda <= 1000; ++lambda) {
    if (!(mean_closed_form(lambda, MeanVariant::ctilde) < half && half < mean_closed_form(lambda, MeanVariant::c))) {
      out.fail("mean inequality fails at lambda = " + std::to_string(lambda));
    }
  }
  const std::vector<uint64_t> samples = {50, 60, 70, 80, 90, 100, 150, 200, 300, 500, 700, 1000, 1500, 2000, 3000, 5000, 7000, 10000};
  double worst = 0;
  for (auto [variant, which] : {std::pair{MeanVariant::c, Formula::mean_c}, std::pair{MeanVariant::ctilde, Formula::mean_ctilde}}) {
    double fitted = 0;
    for (uint64_t lambda : samples) {
      const double n = static_cast<double>(lambda);
      const double scaled =
          std::abs(mean_closed_form(lambda, variant).to_double() - asymptotic_comparators(n, which)) * std::pow(n, 2.5);
      if (lambda == samples.front()) fitted = scaled;
      worst = std::max(worst, scaled / fitted);
    }
  }
  if (worst > 2) out.fail("residual grows by a factor " + std::to_string(worst));
  for (uint64_t lambda = 0; lambda <= 30; ++lambda) {
    if (!binomial_identity_check(lambda)) out.fail("binomial identity fails at lambda = " + std::to_string(lambda));
  }
  if (out.pass) out.detail << "exact for lambda <= 16, inequalities to 1000, residual ratio " << std::setprecision(3) << worst;
  return out;
}

Outcome variance() {
  Outcome out;
  double lo = 1e9, hi = 0;
  for (uint64_t lambda = 40; lambda <= 60; ++lambda) {
    const MomentReport r = diagonal_moments(lambda);
    for (const char* key : {"variance_ratio_c", "variance_ratio_ctilde"}) {
      const double v = r.asym_residuals.at(key);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (lo < 0.65 || hi > 1.35) out.fail("normalized variance leaves [0.65, 1.35]");
  out.detail << (out.pass ? "" : ": ") << "normalized variance in [" << std::setprecision(3) << lo << ", " << hi << "]";
  return out;
}

Outcome special_sequence(const VerifyOptions& o) {
  Outcome out;
  const TruncSeries rec = H_series(2000, HMethod::recurrence);
  const TruncSeries diag = H_series(500, HMethod::diagonal);
  for (int n = 0; n <= 500; ++n) {
    if (rec[n] != diag[n]) out.fail("recurrence and diagonal differ at z^" + std::to_string(n));
  }
  if (!minimal_polynomial_residual(100).is_zero()) out.fail("minimal polynomial residual is nonzero");
  if (!closed_form_H_check(100)) out.fail("closed form differs from the recurrence");
  const TruncSeries H = H_series(std::max(o.special_j, 2000), HMethod::closed_form);
  for (int n = 0; n <= 2000; ++n) {
    if (H[n] != rec[n]) out.fail("closed form differs from the recurrence at z^" + std::to_string(n));
  }
  const Rational half(1, 2);
  double lo = 1e9, hi = 0;
  for (int j = 1; j <= o.special_j; ++j) {
    if (H[j] <= half) out.fail("c_{t_j} <= 1/2 at j = " + std::to_string(j));
    if (j >= 1000) {
      const double r = to_double(H[j] - half) * 4 * std::sqrt(2 * std::numbers::pi * j) / std::sqrt(3.0);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  }
  if (o.special_j >= 1000 && (lo < 0.95 || hi > 1.05)) out.fail("normalized excess leaves [0.95, 1.05]");
  out.detail << (out.pass ? "" : ": ") << "j <= " << o.special_j << ", normalized excess in [" << std::setprecision(4)
             << lo << ", " << hi << "]";
  return out;
}

Outcome determinism() {
  Outcome out;
  const std::vector<Dyadic> eps = {Dyadic::pow2(-2), Dyadic::pow2(-4)};
  ScanOptions one, four;
  four.workers = 4;
  const uint64_t hi = uint64_t{1} << 16;
  if (to_json(scan_range(1, hi, eps, one)) != to_json(scan_range(1, hi, eps, four))) out.fail("scan output differs");
  if (to_json(empirical_moments(14, 1)) != to_json(empirical_moments(14, 4))) out.fail("moments output differs");
  if (to_json(chebyshev_window_count(12, eps[0], 1)) != to_json(chebyshev_window_count(12, eps[0], 4))) {
    out.fail("window count output differs");
  }
  if (out.pass) out.detail << "scan, moments and window outputs identical for 1 and 4 workers";
  return out;
}

const char* criterion_name(int id) {
  static const char* const names[] = {"delta table",          "phi table",          "c_t prefix",
                                      "extremal point",       "conjecture scan",    "oracle equivalence",
                                      "block formulas",       "hyperbinary",        "generating function",
                                      "Taylor coefficients",  "diagonal asymptotics", "mean values",
                                      "variance",             "special sequence",   "determinism"};
  return names[id - 1];
}

}  // namespace

CriterionResult run_criterion(int id, const VerifyOptions& options) {
  if (id < 1 || id > kCriterionCount) throw std::out_of_range("run_criterion: id must be 1.." + std::to_string(kCriterionCount));
  CriterionResult r;
  r.id = id;
  r.name = criterion_name(id);
  const auto start = Clock::now();
  try {
    Outcome out;
    switch (id) {
      case 1: out = delta_table(); break;
      case 2: out = phi_table(); break;
      case 3: out = ct_prefix(); break;
      case 4: out = extremal_point(); break;
      case 5: out = conjecture_scan(options); break;
      case 6: out = oracles(); break;
      case 7: out = block_formulas(); break;
      case 8: out = hyperbinary(); break;
      case 9: out = generating_function(); break;
      case 10: out = taylor_coefficients(); break;
      case 11: out = diagonal_asymptotics(); break;
      case 12: out = mean_values(); break;
      case 13: out = variance(); break;
      case 14: out = special_sequence(options); break;
      case 15: out = determinism(); break;
    }
    r.pass = out.pass;
    r.detail = out.detail.str();
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = since(start);
  return r;
}

std::vector<CriterionResult> run_acceptance(const VerifyOptions& options,
                                            const std::function<void(const CriterionResult&)>& progress) {
  std::vector<CriterionResult> results;
  for (int id = 1; id <= kCriterionCount; ++id) {
    results.push_back(run_criterion(id, options));
    if (progress) progress(results.back());
  }
  return results;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream out;
  out << (r.pass ? "PASS" : "FAIL") << ' ' << std::setw(2) << r.id << "  " << r.name << "  (" << std::fixed
      << std::setprecision(2) << r.seconds << " s)  " << r.detail;
  return out.str();
}

}  // namespace digitsum
