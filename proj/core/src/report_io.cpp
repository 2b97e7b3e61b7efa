#include "digitsum/report_io.hpp"

#include <sstream>

#include "json.hpp"

namespace digitsum {

using json = nlohmann::ordered_json;

namespace {

json exact(const Dyadic& d) { return json{{"value", d.to_string()}, {"decimal", d.to_decimal(kDecimalDigits)}}; }
json exact(const Rational& q) { return json{{"value", to_string(q)}, {"decimal", to_decimal(q, kDecimalDigits)}}; }

json witness(const Witness& w) {
  return json{{"t", w.t}, {"value", w.value.to_string()}, {"decimal", w.value.to_decimal(kDecimalDigits)}};
}

Witness read_witness(const json& j) { return Witness{j.at("t").get<uint64_t>(), Dyadic::parse(j.at("value").get<std::string>())}; }

json witnesses(const std::vector<Witness>& ws) {
  json a = json::array();
  for (const auto& w : ws) a.push_back(witness(w));
  return a;
}

std::vector<Witness> read_witnesses(const json& a) {
  std::vector<Witness> out;
  for (const auto& j : a) out.push_back(read_witness(j));
  return out;
}

json optional_witness(const std::optional<Witness>& w) { return w ? witness(*w) : json(nullptr); }

std::optional<Witness> read_optional_witness(const json& j) {
  if (j.is_null()) return std::nullopt;
  return read_witness(j);
}

Dyadic read_dyadic(const json& j) { return Dyadic::parse(j.at("value").get<std::string>()); }
Rational read_rational(const json& j) { return parse_rational(j.at("value").get<std::string>()); }

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string to_json(const ScanReport& r) {
  json j;
  j["t_lo"] = r.t_lo;
  j["t_hi"] = r.t_hi;
  j["checked"] = r.checked;
  j["violations_c"] = witnesses(r.violations_c);
  j["violations_ctilde"] = witnesses(r.violations_ctilde);
  j["min_c"] = optional_witness(r.min_c);
  j["max_ctilde"] = optional_witness(r.max_ctilde);
  json eps = json::array();
  for (const auto& e : r.epsilon_counts) {
    eps.push_back(json{{"epsilon", e.epsilon.to_string()}, {"count", e.count}});
  }
  j["epsilon_counts"] = eps;
  return j.dump(2) + "\n";
}

ScanReport scan_report_from_json(std::string_view text) {
  const json j = parse_json(text, "scan report");
  ScanReport r;
  r.t_lo = j.at("t_lo").get<uint64_t>();
  r.t_hi = j.at("t_hi").get<uint64_t>();
  r.checked = j.at("checked").get<uint64_t>();
  r.violations_c = read_witnesses(j.at("violations_c"));
  r.violations_ctilde = read_witnesses(j.at("violations_ctilde"));
  r.min_c = read_optional_witness(j.at("min_c"));
  r.max_ctilde = read_optional_witness(j.at("max_ctilde"));
  for (const auto& e : j.at("epsilon_counts")) {
    r.epsilon_counts.push_back(EpsilonCount{Dyadic::parse(e.at("epsilon").get<std::string>()), e.at("count").get<uint64_t>()});
  }
  return r;
}

std::string to_csv(const ScanReport& r) {
  std::ostringstream out;
  out << "kind,t,value,decimal\n";
  auto row = [&](const char* kind, const Witness& w) {
    out << kind << ',' << w.t << ',' << w.value.to_string() << ',' << w.value.to_decimal(kDecimalDigits) << '\n';
  };
  for (const auto& w : r.violations_c) row("violation_c", w);
  for (const auto& w : r.violations_ctilde) row("violation_ctilde", w);
  if (r.min_c) row("min_c", *r.min_c);
  if (r.max_ctilde) row("max_ctilde", *r.max_ctilde);
  return out.str();
}

std::string to_json(const MomentReport& r) {
  json j;
  j["lambda"] = r.lambda;
  j["mean_c"] = exact(r.mean_c);
  j["mean_ctilde"] = exact(r.mean_ctilde);
  j["second_c"] = exact(r.second_c);
  j["second_ctilde"] = exact(r.second_ctilde);
  j["variance_c"] = exact(r.variance_c);
  j["variance_ctilde"] = exact(r.variance_ctilde);
  j["sd_c"] = r.sd_c();
  j["sd_ctilde"] = r.sd_ctilde();
  json res = json::object();
  for (const auto& [k, v] : r.asym_residuals) res[k] = v;
  j["asym_residuals"] = res;
  return j.dump(2) + "\n";
}

MomentReport moment_report_from_json(std::string_view text) {
  const json j = parse_json(text, "moment report");
  MomentReport r;
  r.lambda = j.at("lambda").get<uint64_t>();
  r.mean_c = read_dyadic(j.at("mean_c"));
  r.mean_ctilde = read_dyadic(j.at("mean_ctilde"));
  r.second_c = read_rational(j.at("second_c"));
  r.second_ctilde = read_rational(j.at("second_ctilde"));
  r.variance_c = read_rational(j.at("variance_c"));
  r.variance_ctilde = read_rational(j.at("variance_ctilde"));
  for (const auto& [k, v] : j.at("asym_residuals").items()) r.asym_residuals[k] = v.get<double>();
  return r;
}

std::string to_csv(const MomentReport& r) {
  std::ostringstream out;
  out << "quantity,value,decimal\n";
  out << "mean_c," << r.mean_c.to_string() << ',' << r.mean_c.to_decimal(kDecimalDigits) << '\n';
  out << "mean_ctilde," << r.mean_ctilde.to_string() << ',' << r.mean_ctilde.to_decimal(kDecimalDigits) << '\n';
  auto rational_row = [&](const char* name, const Rational& q) {
    out << name << ',' << to_string(q) << ',' << to_decimal(q, kDecimalDigits) << '\n';
  };
  rational_row("second_c", r.second_c);
  rational_row("second_ctilde", r.second_ctilde);
  rational_row("variance_c", r.variance_c);
  rational_row("variance_ctilde", r.variance_ctilde);
  return out.str();
}

std::string to_json(const ProfileReport& r) {
  json j;
  j["lambda"] = r.lambda;
  j["k_lo"] = r.k_lo;
  json m = json::array();
  for (size_t i = 0; i < r.m.size(); ++i) {
    json e = exact(r.m[i]);
    m.push_back(json{{"k", r.k_lo + static_cast<int64_t>(i)}, {"value", e["value"]}, {"decimal", e["decimal"]}});
  }
  j["m"] = m;
  json cum = json::array();
  for (size_t l = 0; l < r.M.size(); ++l) {
    json e = exact(r.M[l]);
    cum.push_back(json{{"l", l}, {"value", e["value"]}, {"decimal", e["decimal"]}});
  }
  j["M"] = cum;
  json g = json::array();
  for (const auto& [k, v] : r.gaussian_residuals) g.push_back(json{{"k", k}, {"residual", v}});
  j["gaussian_residuals"] = g;
  return j.dump(2) + "\n";
}

std::string to_json(const WindowCount& w) {
  json j;
  j["lambda"] = w.lambda;
  j["epsilon"] = w.epsilon.to_string();
  j["total"] = w.total;
  j["joint"] = w.joint;
  j["c_side"] = w.c_side;
  j["ctilde_side"] = w.ctilde_side;
  j["fraction"] = exact(w.fraction());
  return j.dump(2) + "\n";
}

namespace {

template <class Column>
json column_json(const Column& col, int64_t lo, int64_t hi, const char* kind) {
  json j;
  j["t"] = col.t;
  j["kind"] = kind;
  json entries = json::array();
  for (int64_t k = hi; k >= lo; --k) {
    json e = exact(col.at(k));
    entries.push_back(json{{"k", k}, {"value", e["value"]}, {"decimal", e["decimal"]}});
  }
  j["entries"] = entries;
  return j;
}

template <class Column>
std::string column_csv(const Column& col, int64_t lo, int64_t hi) {
  std::ostringstream out;
  out << "k,value,decimal\n";
  for (int64_t k = hi; k >= lo; --k) {
    const Dyadic v = col.at(k);
    out << k << ',' << v.to_string() << ',' << v.to_decimal(kDecimalDigits) << '\n';
  }
  return out.str();
}

}  // namespace

std::string to_json(const DeltaColumn& c) {
  json j = column_json(c, c.k_lo, c.k_hi(), "delta");
  j["k_lo"] = c.k_lo;
  j["tail"] = "delta(k) = delta(k_lo) * 2^(k - k_lo) for k <= k_lo";
  return j.dump(2) + "\n";
}

std::string to_csv(const DeltaColumn& c) { return column_csv(c, c.k_lo, c.k_hi()); }

std::string to_json(const PhiColumn& c) { return column_json(c, c.k_min, c.k_max(), "phi").dump(2) + "\n"; }

std::string to_csv(const PhiColumn& c) { return column_csv(c, c.k_min, c.k_max()); }

}  // namespace digitsum
