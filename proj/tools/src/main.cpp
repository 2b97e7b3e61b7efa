#include <charconv>
#include <iomanip>
#include <map>
#include <cmath>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "digitsum/density.hpp"
#include "digitsum/digits.hpp"
#include "digitsum/equivalences.hpp"
#include "digitsum/hyperbinary.hpp"
#include "digitsum/moments.hpp"
#include "digitsum/report_io.hpp"
#include "digitsum/series.hpp"
#include "digitsum/verify.hpp"
#include "json.hpp"
#include "table.hpp"

using namespace digitsum;
using json = nlohmann::ordered_json;
using cli::Table;

namespace {

enum class Format { table, json, csv };

struct RunConfig {
  Format format = Format::table;
  unsigned workers = 1;
  std::optional<uint64_t> max_cost;
  std::string checkpoint;
  std::vector<std::string> epsilons;
};

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCost = 3;

uint64_t parse_number(const std::string& text) {
  if (text.starts_with("0b")) return parse_binary(std::string_view(text).substr(2));
  uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) throw std::invalid_argument("not a number: '" + text + "'");
  return v;
}

uint64_t cost(const RunConfig& c, uint64_t fallback) { return c.max_cost.value_or(fallback); }

std::string dec(const Dyadic& d) { return d.to_decimal(kDecimalDigits); }
std::string dec(const Rational& q) { return to_decimal(q, kDecimalDigits); }
std::string dec(double x) {
  std::ostringstream out;
  out << std::setprecision(6) << x;
  return out.str();
}

json exact(const Dyadic& d) { return json{{"value", d.to_string()}, {"decimal", dec(d)}}; }
json exact(const Rational& q) { return json{{"value", to_string(q)}, {"decimal", dec(q)}}; }

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

struct Check {
  std::string name;
  bool pass = true;
  std::string detail;
};

int report_checks(const RunConfig& c, uint64_t t, const std::vector<Check>& checks) {
  bool ok = true;
  for (const auto& ch : checks) ok = ok && ch.pass;
  if (c.format == Format::json) {
    json arr = json::array();
    for (const auto& ch : checks) arr.push_back(json{{"check", ch.name}, {"pass", ch.pass}, {"detail", ch.detail}});
    print_json(json{{"t", t}, {"pass", ok}, {"checks", arr}});
  } else if (c.format == Format::csv) {
    std::cout << "check,pass,detail\n";
    for (const auto& ch : checks) std::cout << ch.name << ',' << (ch.pass ? "true" : "false") << ',' << ch.detail << '\n';
  } else {
    Table table({"check", "result", "detail"});
    for (const auto& ch : checks) table.add({ch.name, ch.pass ? "PASS" : "FAIL", ch.detail});
    table.print(std::cout);
  }
  for (const auto& ch : checks) {
    if (!ch.pass) std::cerr << "violation: " << ch.name << ": " << ch.detail << '\n';
  }
  return ok ? 0 : kExitViolation;
}

// --- commands ---------------------------------------------------------------

int cmd_ct(const RunConfig& c, uint64_t t) {
  const Dyadic v = ct(t), vt = ct_tilde(t);
  const std::optional<Dyadic> p = t == 0 ? std::nullopt : std::optional<Dyadic>(pt(t));
  if (c.format == Format::json) {
    json j{{"t", t}, {"c", exact(v)}, {"ctilde", exact(vt)}};
    if (p) j["p"] = exact(*p);
    print_json(j);
  } else if (c.format == Format::csv) {
    std::cout << "quantity,value,decimal\n";
    std::cout << "c," << v.to_string() << ',' << dec(v) << '\n';
    std::cout << "ctilde," << vt.to_string() << ',' << dec(vt) << '\n';
    if (p) std::cout << "p," << p->to_string() << ',' << dec(*p) << '\n';
  } else {
    Table table({"t = " + std::to_string(t), "exact", "decimal"});
    table.add({"c", v.to_fraction_string(), dec(v)});
    table.add({"c~", vt.to_fraction_string(), dec(vt)});
    if (p) table.add({"p", p->to_fraction_string(), dec(*p)});
    table.print(std::cout);
  }
  return 0;
}

template <class Column>
void print_column_table(const Column& col, int64_t lo, int64_t hi, const char* symbol) {
  Table table({"k", std::string(symbol) + "(k," + std::to_string(col.t) + ")", "decimal"});
  for (int64_t k = hi; k >= lo; --k) table.add({std::to_string(k), col.at(k).to_fraction_string(), dec(col.at(k))});
  table.print(std::cout);
}

int cmd_delta(const RunConfig& c, uint64_t t) {
  const DeltaColumn col = delta_column(t);
  if (c.format == Format::json) {
    std::cout << to_json(col);
  } else if (c.format == Format::csv) {
    std::cout << to_csv(col);
  } else {
    print_column_table(col, col.k_lo, col.k_hi(), "delta");
    const std::string shift = col.k_lo == 0 ? "k" : col.k_lo > 0 ? "k-" + std::to_string(col.k_lo) : "k+" + std::to_string(-col.k_lo);
    std::cout << "delta(k," << t << ") = " << col.tail_head().to_fraction_string() << " * 2^(" << shift << ") for k < " << col.k_lo
              << '\n';
  }
  return 0;
}

int cmd_phi(const RunConfig& c, uint64_t t) {
  const PhiColumn col = phi_column(t);
  if (c.format == Format::json) {
    std::cout << to_json(col);
  } else if (c.format == Format::csv) {
    std::cout << to_csv(col);
  } else {
    print_column_table(col, col.k_min, col.k_max(), "phi");
  }
  return 0;
}

int cmd_scan(const RunConfig& c, uint64_t lo, uint64_t hi) {
  if (lo >= hi) throw std::invalid_argument("scan: empty range");
  if (hi - lo > cost(c, uint64_t{1} << 32)) {
    throw std::length_error("scan: range of " + std::to_string(hi - lo) + " values exceeds the cost guard");
  }
  std::vector<Dyadic> eps;
  for (const auto& e : c.epsilons) eps.push_back(Dyadic::parse(e));
  ScanOptions options;
  options.workers = c.workers;
  options.checkpoint_path = c.checkpoint;
  const ScanReport r = scan_range(lo, hi, eps, options);
  if (c.format == Format::json) {
    std::cout << to_json(r);
  } else if (c.format == Format::csv) {
    std::cout << to_csv(r);
  } else {
    std::cout << "range       [" << r.t_lo << ", " << r.t_hi << ")\n";
    std::cout << "checked     " << r.checked << '\n';
    std::cout << "violations  " << r.violations_c.size() + r.violations_ctilde.size() << '\n';
    if (r.min_c) std::cout << "min c       " << r.min_c->value.to_fraction_string() << "  " << dec(r.min_c->value) << "  t = " << r.min_c->t << '\n';
    if (r.max_ctilde) {
      std::cout << "max c~      " << r.max_ctilde->value.to_fraction_string() << "  " << dec(r.max_ctilde->value)
                << "  t = " << r.max_ctilde->t << '\n';
    }
    for (const auto& e : r.epsilon_counts) {
      std::cout << "1/2 < c < 1/2 + " << e.epsilon.to_fraction_string() << ": " << e.count << '\n';
    }
  }
  for (const auto& w : r.violations_c) std::cerr << "violation: c_t <= 1/2 at t = " << w.t << ": " << w.value.to_string() << '\n';
  for (const auto& w : r.violations_ctilde) std::cerr << "violation: c~_t > 1/2 at t = " << w.t << ": " << w.value.to_string() << '\n';
  return r.violations_c.empty() && r.violations_ctilde.empty() ? 0 : kExitViolation;
}

int cmd_oracle(const RunConfig& c, uint64_t t) {
  if (t == 0) throw std::invalid_argument("oracle: t must be positive");
  const auto max_bits = static_cast<unsigned>(cost(c, 24));
  std::vector<Check> checks;
  const DeltaColumn col = delta_column(t);

  Check brute{"delta vs enumeration", true, ""};
  const int64_t lo = std::min<int64_t>(col.k_lo, 0) - 1;
  for (int64_t k = lo; k <= col.k_hi() + 1; ++k) {
    const Dyadic b = brute_force_density(k, t, max_bits);
    if (b != col.at(k)) {
      brute.pass = false;
      brute.detail = "k = " + std::to_string(k) + ": " + col.at(k).to_string() + " vs " + b.to_string();
      break;
    }
  }
  if (brute.pass) brute.detail = "k = " + std::to_string(lo) + ".." + std::to_string(col.k_hi() + 1);
  checks.push_back(brute);

  const Dyadic poch = density_via_pochhammer(t, cost(c, 18));
  checks.push_back({"Pochhammer density", poch == ct(t), "c = " + ct(t).to_string() + ", Pochhammer " + poch.to_string()});

  const DeltaColumn via_phi = delta_from_phi(t);
  checks.push_back({"delta from phi", via_phi == col, via_phi == col ? "columns equal" : "columns differ"});

  const unsigned shift = sum_of_digits(t) + 1;
  if (bit_length_minus_one(t) + shift < 62) {
    Check red{"phi reduction", true, "k = 0.." + std::to_string(sum_of_digits(t))};
    for (int64_t k = 0; k <= static_cast<int64_t>(sum_of_digits(t)); ++k) {
      if (!phi_reduction_check(t, k)) {
        red.pass = false;
        red.detail = "k = " + std::to_string(k);
        break;
      }
    }
    checks.push_back(red);
  }

  const PhiColumn phi_col = phi_column(t);
  Check hyper{"hyperbinary phi", true, ""};
  const HyperbinaryCounts h = h_counts(t);
  for (int64_t k = phi_col.k_min - 1; k <= phi_col.k_max() + 1; ++k) {
    if (phi_from_counts(h, k) != phi_col.at(k)) {
      hyper.pass = false;
      hyper.detail = "k = " + std::to_string(k);
      break;
    }
  }
  if (hyper.pass) hyper.detail = std::to_string(h.expansions()) + " expansions of " + std::to_string(t - 1);
  checks.push_back(hyper);

  const uint64_t rev = reverse_binary(t);
  const bool sym = delta_column(rev).window == col.window && delta_column(rev).k_lo == col.k_lo;
  checks.push_back({"reversal symmetry", sym, "t^R = " + std::to_string(rev)});

  checks.push_back({"normalization", col.total() == 1 && phi_col.total() == 1, "sum delta = " + col.total().to_string()});
  return report_checks(c, t, checks);
}

int cmd_rows(const RunConfig& c, uint64_t t, int alpha) {
  if (t == 0) throw std::invalid_argument("rows: t must be positive");
  if (alpha < 1 || alpha > 4) throw std::invalid_argument("rows: alpha must be in 1..4");
  const Rational a = a_poly(alpha, t);
  const uint64_t direct = row_count_direct(t, alpha, cost(c, uint64_t{1} << 14));
  const Rational b = b_poly(alpha, t);
  const unsigned lambda = static_cast<unsigned>(alpha) + bit_length_minus_one(t);
  const Rational recount = Rational(column_count_direct(t, alpha)) / (Rational(1) << lambda);
  const uint64_t period = zabek_period(t, alpha, static_cast<unsigned>(cost(c, 20)));
  const uint64_t predicted = uint64_t{1} << lambda;

  std::vector<Check> checks = {
      {"row count", a == Rational(direct), "formula " + to_string(a) + ", direct " + std::to_string(direct)},
      {"column density", b == recount, "formula " + to_string(b) + ", recount " + to_string(recount)},
      {"period", period == predicted, "found " + std::to_string(period) + ", 2^(alpha+mu) = " + std::to_string(predicted)},
  };
  const unsigned s = sum_of_digits(t);
  if (static_cast<int>(s) + 1 == alpha) {
    checks.push_back({"b equals c_t", b == static_cast<Rational>(ct(t)), "c_t = " + ct(t).to_fraction_string()});
  }
  return report_checks(c, t, checks);
}

int cmd_hyper(const RunConfig& c, uint64_t t) {
  if (t == 0) throw std::invalid_argument("hyper: t must be positive");
  const uint64_t max_n = cost(c, uint64_t{1} << 20);
  const auto expansions = enumerate_proper(t - 1, max_n);
  const HyperbinaryCounts h = h_counts(t, HyperMethod::recurrence, max_n);
  const PhiColumn col = phi_column(t);
  bool ok = h.weighted_total() == 1;
  for (int64_t k = col.k_min - 1; k <= col.k_max() + 1; ++k) ok = ok && phi_from_counts(h, k) == col.at(k);

  auto weight = [](const HyperExpansion& e) { return Dyadic::pow2(-static_cast<int64_t>(e.twos() + e.zeros())); };
  auto k_of = [](const HyperExpansion& e) { return static_cast<int64_t>(e.twos()) - static_cast<int64_t>(e.zeros()); };
  if (c.format == Format::json) {
    json ex = json::array();
    for (const auto& e : expansions) {
      ex.push_back(json{{"digits", e.to_string()}, {"twos", e.twos()}, {"zeros", e.zeros()}, {"k", k_of(e)},
                        {"weight", weight(e).to_string()}});
    }
    json counts = json::array();
    for (const auto& [ij, n] : h.counts) counts.push_back(json{{"i", ij.first}, {"j", ij.second}, {"h", n}});
    print_json(json{{"t", t}, {"expansions", ex}, {"counts", counts}, {"phi_matches", ok}});
  } else if (c.format == Format::csv) {
    std::cout << "digits,twos,zeros,k,weight\n";
    for (const auto& e : expansions) {
      std::cout << e.to_string() << ',' << e.twos() << ',' << e.zeros() << ',' << k_of(e) << ',' << weight(e).to_string() << '\n';
    }
  } else {
    Table table({"expansion", "twos", "zeros", "k", "weight"});
    for (const auto& e : expansions) {
      table.add({"(" + e.to_string() + ")", std::to_string(e.twos()), std::to_string(e.zeros()), std::to_string(k_of(e)),
                 weight(e).to_fraction_string()});
    }
    table.print(std::cout);
    std::cout << "phi column rebuilt: " << (ok ? "yes" : "no") << '\n';
  }
  if (!ok) std::cerr << "violation: expansion sums do not reproduce phi(., " << t << ")\n";
  return ok ? 0 : kExitViolation;
}

MomentReport moments_for(const RunConfig& c, uint64_t lambda, const std::string& method) {
  const bool enumerate = method == "enumerate" || (method == "auto" && lambda <= 16);
  if (enumerate) return empirical_moments(lambda, c.workers, cost(c, 22));
  return diagonal_moments(lambda, static_cast<int>(cost(c, 60)));
}

int cmd_moments(const RunConfig& c, uint64_t lo, std::optional<uint64_t> hi_opt, const std::string& method, bool profile) {
  const uint64_t hi = hi_opt.value_or(lo);
  if (hi < lo) throw std::invalid_argument("moments: empty lambda range");
  if (profile) {
    if (hi_opt) throw std::invalid_argument("moments: --profile takes a single lambda");
    const ProfileReport p = mean_profile(lo);
    if (c.format == Format::json) {
      std::cout << to_json(p);
    } else {
      if (c.format == Format::csv) std::cout << "k,value,decimal\n";
      Table table({"k", "m_k", "decimal"});
      for (size_t i = 0; i < p.m.size(); ++i) {
        const int64_t k = p.k_lo + static_cast<int64_t>(i);
        if (c.format == Format::csv) {
          std::cout << k << ',' << p.m[i].to_string() << ',' << dec(p.m[i]) << '\n';
        } else {
          table.add({std::to_string(k), p.m[i].to_fraction_string(), dec(p.m[i])});
        }
      }
      if (c.format == Format::table) table.print(std::cout);
    }
    return 0;
  }

  std::vector<Dyadic> eps;
  for (const auto& e : c.epsilons) eps.push_back(Dyadic::parse(e));
  std::vector<MomentReport> reports;
  std::vector<std::vector<WindowCount>> windows;
  for (uint64_t l = lo; l <= hi; ++l) {
    reports.push_back(moments_for(c, l, method));
    windows.emplace_back();
    for (const auto& e : eps) windows.back().push_back(chebyshev_window_count(l, e, c.workers, cost(c, 22)));
  }

  if (c.format == Format::json) {
    json arr = json::array();
    for (size_t i = 0; i < reports.size(); ++i) {
      json j = json::parse(to_json(reports[i]));
      if (!windows[i].empty()) {
        j["windows"] = json::array();
        for (const auto& w : windows[i]) j["windows"].push_back(json::parse(to_json(w)));
      }
      arr.push_back(j);
    }
    print_json(hi_opt ? arr : arr.front());
  } else if (c.format == Format::csv) {
    std::cout << "lambda,quantity,value,decimal\n";
    for (const auto& r : reports) {
      std::istringstream rows(to_csv(r));
      std::string line;
      std::getline(rows, line);
      while (std::getline(rows, line)) std::cout << r.lambda << ',' << line << '\n';
    }
  } else {
    Table table({"lambda", "mean c", "decimal", "mean c~", "decimal", "sd c", "sd c~", "var/asym c", "var/asym c~"});
    for (const auto& r : reports) {
      table.add({std::to_string(r.lambda), r.mean_c.to_fraction_string(), dec(r.mean_c), r.mean_ctilde.to_fraction_string(),
                 dec(r.mean_ctilde), dec(r.sd_c()), dec(r.sd_ctilde()), dec(r.asym_residuals.at("variance_ratio_c")),
                 dec(r.asym_residuals.at("variance_ratio_ctilde"))});
    }
    table.print(std::cout);
    for (size_t i = 0; i < reports.size(); ++i) {
      for (const auto& w : windows[i]) {
        std::cout << "lambda " << w.lambda << ", eps " << w.epsilon.to_fraction_string() << ": " << w.joint << " of "
                  << w.total << " in the window (" << dec(w.fraction()) << ")\n";
      }
    }
  }
  return 0;
}

int cmd_diagonal(const RunConfig& c, int n, std::optional<int> from) {
  const int max_n = static_cast<int>(cost(c, 60));
  const int first = from.value_or(n);
  if (first < 0 || first > n) throw std::invalid_argument("diagonal: --from must lie in 0..n");
  const auto d1 = diagonal_F_sequence(n, 1, max_n);
  const auto d0 = diagonal_F_sequence(n, 0, max_n);
  struct Row {
    int n;
    Rational second_c, second_ctilde;
    double scaled_c, scaled_ctilde;
  };
  std::vector<Row> rows;
  for (int m = first; m <= n; ++m) {
    const Rational inv = static_cast<Rational>(Dyadic::pow2(-3 * m));
    Row r{m, d1[m] * inv, d0[m] * inv, 0, 0};
    if (m >= 1) {
      const double w = std::pow(m, 2.5);
      r.scaled_c = (to_double(r.second_c) - asymptotic_comparators(m, Formula::secmom_c)) * w;
      r.scaled_ctilde = (to_double(r.second_ctilde) - asymptotic_comparators(m, Formula::secmom_ctilde)) * w;
    }
    rows.push_back(r);
  }
  if (c.format == Format::json) {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back(json{{"n", r.n},
                         {"offset1", exact(r.second_c)},
                         {"offset0", exact(r.second_ctilde)},
                         {"residual_n52_offset1", r.scaled_c},
                         {"residual_n52_offset0", r.scaled_ctilde}});
    }
    print_json(from ? arr : arr.front());
  } else if (c.format == Format::csv) {
    std::cout << "n,offset,value,decimal,residual_n52\n";
    for (const auto& r : rows) {
      std::cout << r.n << ",1," << to_string(r.second_c) << ',' << dec(r.second_c) << ',' << r.scaled_c << '\n';
      std::cout << r.n << ",0," << to_string(r.second_ctilde) << ',' << dec(r.second_ctilde) << ',' << r.scaled_ctilde << '\n';
    }
  } else {
    Table table({"n", "offset 1", "decimal", "resid*n^2.5", "offset 0", "decimal", "resid*n^2.5"});
    for (const auto& r : rows) {
      table.add({std::to_string(r.n), to_string(r.second_c), dec(r.second_c), dec(r.scaled_c), to_string(r.second_ctilde),
                 dec(r.second_ctilde), dec(r.scaled_ctilde)});
    }
    table.print(std::cout);
  }
  return 0;
}

int cmd_special(const RunConfig& c, int jmax, const std::string& method) {
  if (jmax < 0) throw std::invalid_argument("special: jmax must be nonnegative");
  std::vector<SpecialTerm> terms;
  const bool columns = method == "columns" || (method == "auto" && jmax <= 2000);
  if (columns) {
    terms = special_sequence_columns(jmax, static_cast<int>(cost(c, 100000)));
  } else {
    const HMethod m = method == "recurrence" ? HMethod::recurrence : HMethod::closed_form;
    std::optional<int> guard;
    if (c.max_cost) guard = static_cast<int>(*c.max_cost);
    const TruncSeries H = H_series(jmax, m, guard);
    BigInt t = 0;
    for (int j = 0; j <= jmax; ++j) {
      terms.push_back(SpecialTerm{j, t, Dyadic::from_rational(H[j])});
      t = t * 4 + 1;
    }
  }
  auto excess = [](const SpecialTerm& s) {
    if (s.j == 0) return 0.0;
    return (s.c.to_double() - 0.5) * 4 * std::sqrt(2 * std::numbers::pi * s.j) / std::sqrt(3.0);
  };
  bool ok = true;
  for (const auto& s : terms) {
    if (s.j >= 1 && s.c <= Dyadic::pow2(-1)) {
      ok = false;
      std::cerr << "violation: c_{t_" << s.j << "} = " << s.c.to_string() << " <= 1/2\n";
    }
  }
  if (c.format == Format::json) {
    json arr = json::array();
    for (const auto& s : terms) {
      arr.push_back(json{{"j", s.j}, {"t", s.t.get_str()}, {"c", s.c.to_string()}, {"decimal", dec(s.c)}, {"normalized_excess", excess(s)}});
    }
    print_json(arr);
  } else if (c.format == Format::csv) {
    std::cout << "j,t,c,decimal,normalized_excess\n";
    for (const auto& s : terms) std::cout << s.j << ',' << s.t.get_str() << ',' << s.c.to_string() << ',' << dec(s.c) << ',' << excess(s) << '\n';
  } else {
    Table table({"j", "t", "c", "decimal", "normalized excess"});
    for (const auto& s : terms) table.add({std::to_string(s.j), s.t.get_str(), s.c.to_fraction_string(), dec(s.c), s.j ? dec(excess(s)) : ""});
    table.print(std::cout);
  }
  return ok ? 0 : kExitViolation;
}

int cmd_verify(const RunConfig& c, const std::vector<int>& only) {
  VerifyOptions options;
  options.workers = std::max(c.workers, 1u);
  std::vector<CriterionResult> results;
  auto emit = [&](const CriterionResult& r) {
    if (c.format == Format::table) std::cout << format_result(r) << std::endl;
  };
  if (only.empty()) {
    results = run_acceptance(options, emit);
  } else {
    for (int id : only) {
      results.push_back(run_criterion(id, options));
      emit(results.back());
    }
  }
  bool ok = true;
  for (const auto& r : results) ok = ok && r.pass;
  if (c.format == Format::json) {
    json arr = json::array();
    for (const auto& r : results) {
      arr.push_back(json{{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"seconds", r.seconds}, {"detail", r.detail}});
    }
    print_json(arr);
  } else if (c.format == Format::csv) {
    std::cout << "id,name,pass,seconds,detail\n";
    for (const auto& r : results) {
      std::cout << r.id << ',' << r.name << ',' << (r.pass ? "true" : "false") << ',' << r.seconds << ",\"" << r.detail << "\"\n";
    }
  } else {
    std::cout << (ok ? "all criteria pass" : "some criteria FAIL") << '\n';
  }
  return ok ? 0 : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact densities of s(n+t) - s(n) and related checks"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig config;
  const std::map<std::string, Format> formats{{"table", Format::table}, {"json", Format::json}, {"csv", Format::csv}};
  app.add_option("--format", config.format, "Output format")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
      ->default_str("table");
  app.add_option("--workers", config.workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--max-cost", config.max_cost, "Raise the command's cost guard to this limit");
  app.add_option("--checkpoint", config.checkpoint, "Checkpoint file for scan");
  app.add_option("--epsilon", config.epsilons, "Window width, repeatable (scan, moments)");

  std::string t_arg, lo_arg, hi_arg;
  int alpha = 0, n = 0, jmax = 0;
  uint64_t lambda = 0;
  std::optional<uint64_t> lambda_hi;
  std::optional<int> from;
  std::string method = "auto";
  bool profile = false;
  std::vector<int> only;

  auto* ct_cmd = app.add_subcommand("ct", "c_t, c~_t and p_t");
  ct_cmd->add_option("t", t_arg, "t (decimal or 0b...)")->required();
  auto* delta_cmd = app.add_subcommand("delta", "Column delta(., t)");
  delta_cmd->add_option("t", t_arg)->required();
  auto* phi_cmd = app.add_subcommand("phi", "Column phi(., t)");
  phi_cmd->add_option("t", t_arg)->required();
  auto* scan_cmd = app.add_subcommand("scan", "Check c~_t <= 1/2 < c_t on [lo, hi)");
  scan_cmd->add_option("lo", lo_arg)->required();
  scan_cmd->add_option("hi", hi_arg)->required();
  auto* oracle_cmd = app.add_subcommand("oracle", "Cross-check one column against independent methods");
  oracle_cmd->add_option("t", t_arg)->required();
  auto* rows_cmd = app.add_subcommand("rows", "Block formulas for rows and columns of Pascal's triangle mod 2^alpha");
  rows_cmd->add_option("t", t_arg)->required();
  rows_cmd->add_option("alpha", alpha)->required();
  auto* hyper_cmd = app.add_subcommand("hyper", "Proper hyperbinary expansions of t-1");
  hyper_cmd->add_option("t", t_arg)->required();
  auto* moments_cmd = app.add_subcommand("moments", "Means and variances over [2^lambda, 2^(lambda+1))");
  moments_cmd->add_option("lambda", lambda)->required();
  moments_cmd->add_option("lambda_hi", lambda_hi, "Last lambda of a range");
  moments_cmd->add_option("--method", method)->check(CLI::IsMember({"auto", "enumerate", "diagonal"}));
  moments_cmd->add_flag("--profile", profile, "Averaged column m_{k,lambda} instead of moments");
  auto* diagonal_cmd = app.add_subcommand("diagonal", "Normalized diagonal coefficients of F");
  diagonal_cmd->add_option("n", n)->required();
  diagonal_cmd->add_option("--from", from, "Print every n from this value");
  auto* special_cmd = app.add_subcommand("special", "c_t along t_j = (10...101)_2");
  special_cmd->add_option("jmax", jmax)->required();
  special_cmd->add_option("--method", method)->check(CLI::IsMember({"auto", "columns", "recurrence", "closed_form"}));
  auto* verify_cmd = app.add_subcommand("verify-paper", "Run the acceptance suite");
  verify_cmd->add_option("--only", only, "Criterion ids to run")->check(CLI::Range(1, kCriterionCount));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ct_cmd) return cmd_ct(config, parse_number(t_arg));
    if (*delta_cmd) return cmd_delta(config, parse_number(t_arg));
    if (*phi_cmd) return cmd_phi(config, parse_number(t_arg));
    if (*scan_cmd) return cmd_scan(config, parse_number(lo_arg), parse_number(hi_arg));
    if (*oracle_cmd) return cmd_oracle(config, parse_number(t_arg));
    if (*rows_cmd) return cmd_rows(config, parse_number(t_arg), alpha);
    if (*hyper_cmd) return cmd_hyper(config, parse_number(t_arg));
    if (*moments_cmd) return cmd_moments(config, lambda, lambda_hi, method, profile);
    if (*diagonal_cmd) return cmd_diagonal(config, n, from);
    if (*special_cmd) return cmd_special(config, jmax, method);
    if (*verify_cmd) return cmd_verify(config, only);
  } catch (const std::length_error& e) {
    std::cerr << "cost guard: " << e.what() << " (raise with --max-cost)\n";
    return kExitCost;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCost;
  }
  return kExitUsage;
}
