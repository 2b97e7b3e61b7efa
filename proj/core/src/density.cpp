#include "digitsum/density.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "digitsum/detail/column_kernel.hpp"
#include "digitsum/detail/scan_engine.hpp"
#include "digitsum/digits.hpp"

namespace digitsum {

using detail::ScaledColumn;
using detail::Seed;

namespace {

template <class Int>
DeltaColumn to_delta_column(uint64_t t, const ScaledColumn<Int>& col) {
  DeltaColumn out;
  out.t = t;
  out.k_lo = col.lo;
  out.window.reserve(col.num.size());
  for (int64_t k = col.lo; k <= col.hi(); ++k) out.window.push_back(col.value(k));
  return out;
}

template <class Int>
PhiColumn to_phi_column(uint64_t t, const ScaledColumn<Int>& col) {
  if (!detail::is_zero(col.num.front())) throw std::logic_error("phi column lost its zero lower tail");
  PhiColumn out;
  out.t = t;
  out.k_min = col.lo + 1;
  for (int64_t k = col.lo + 1; k <= col.hi(); ++k) out.support.push_back(col.value(k));
  return out;
}

void require_positive(uint64_t t, const char* what) {
  if (t == 0) throw std::domain_error(std::string(what) + ": t must be positive");
}

}  // namespace

// ---------------------------------------------------------------------------
// DeltaColumn / PhiColumn

Dyadic DeltaColumn::at(int64_t k) const {
  if (k > k_hi()) return Dyadic{};
  if (k >= k_lo) return window[static_cast<size_t>(k - k_lo)];
  return window.front().mul_pow2(k - k_lo);
}

Dyadic DeltaColumn::total() const {
  Dyadic s = window.front();  // tail below k_lo sums to delta(k_lo)
  for (const auto& v : window) s += v;
  return s;
}

Dyadic DeltaColumn::sum_from(int64_t from) const {
  Dyadic s;
  for (int64_t k = std::max(from, k_lo); k <= k_hi(); ++k) s += window[static_cast<size_t>(k - k_lo)];
  if (from < k_lo) s += window.front() - window.front().mul_pow2(from - k_lo);
  return s;
}

DeltaColumn DeltaColumn::canonical(uint64_t t, int64_t k_lo, std::vector<Dyadic> window) {
  while (window.size() > 1 && window.back().is_zero()) window.pop_back();
  size_t drop = 0;
  while (drop + 1 < window.size() && window[drop + 1] == window[drop].mul_pow2(1)) ++drop;
  window.erase(window.begin(), window.begin() + static_cast<std::ptrdiff_t>(drop));
  return DeltaColumn{t, k_lo + static_cast<int64_t>(drop), std::move(window)};
}

Dyadic PhiColumn::at(int64_t k) const {
  if (k < k_min || k > k_max()) return Dyadic{};
  return support[static_cast<size_t>(k - k_min)];
}

Dyadic PhiColumn::total() const { return sum_from(k_min); }

Dyadic PhiColumn::sum_from(int64_t from) const {
  Dyadic s;
  for (int64_t k = std::max(from, k_min); k <= k_max(); ++k) s += support[static_cast<size_t>(k - k_min)];
  return s;
}

// ---------------------------------------------------------------------------
// single columns

DeltaColumn delta_column(uint64_t t) {
  require_positive(t, "delta_column");
  return detail::with_promotion([t](auto zero) {
    using Int = decltype(zero);
    return to_delta_column(t, detail::walk<Int>(t, detail::delta_seed<Int>()));
  });
}

Dyadic delta(int64_t k, uint64_t t) { return delta_column(t).at(k); }

Dyadic ct(uint64_t t) {
  if (t == 0) return Dyadic{1};
  return detail::with_promotion([t](auto zero) {
    using Int = decltype(zero);
    return detail::walk<Int>(t, detail::delta_seed<Int>()).sum_from(0);
  });
}

Dyadic ct_tilde(uint64_t t) {
  if (t == 0) return Dyadic{};
  return detail::with_promotion([t](auto zero) {
    using Int = decltype(zero);
    return detail::walk<Int>(t, detail::delta_seed<Int>()).sum_from(1);
  });
}

PhiColumn phi_column(uint64_t t) {
  require_positive(t, "phi_column");
  return detail::with_promotion([t](auto zero) {
    using Int = decltype(zero);
    return to_phi_column(t, detail::walk<Int>(t, detail::point_mass_seed<Int>()));
  });
}

Dyadic phi(int64_t k, uint64_t t) { return phi_column(t).at(k); }

Dyadic pt(uint64_t t) { return phi_column(t).sum_from(0); }

DeltaColumn delta_from_phi(uint64_t t) {
  const PhiColumn ph = phi_column(t);
  // For k <= k_min + 1 every support entry contributes, so the result is
  // geometric there and the window may start at k_min + 1.
  std::vector<Dyadic> window;
  for (int64_t k = ph.k_min + 1; k <= ph.k_max() + 1; ++k) {
    Dyadic v;
    for (int64_t i = std::max(k - 1, ph.k_min); i <= ph.k_max(); ++i) v += ph.at(i).mul_pow2(k - i - 2);
    window.push_back(v);
  }
  return DeltaColumn::canonical(t, ph.k_min + 1, std::move(window));
}

bool phi_reduction_check(uint64_t t, int64_t k) {
  require_positive(t, "phi_reduction_check");
  if (k < 0) throw std::domain_error("phi_reduction_check: k must be nonnegative");
  const unsigned shift = sum_of_digits(t) + 1;
  if (bit_length_minus_one(t) + shift >= 63) throw std::overflow_error("phi_reduction_check: 2^(s(t)+1) t + 1 exceeds 64 bits");
  const uint64_t t1 = (t << shift) + 1;
  return delta(k, t) == phi(k, t1);
}

Dyadic brute_force_density(int64_t k, uint64_t t, unsigned max_bits) {
  const int64_t carries = static_cast<int64_t>(sum_of_digits(t)) - k;
  if (carries < 0) return Dyadic();
  // residues whose addition carries out of bit bits-1 have more than `carries` carries
  const uint64_t length = t == 0 ? 0 : bit_length_minus_one(t) + 1;
  const uint64_t bits = length + static_cast<uint64_t>(carries);
  if (bits > max_bits) {
    throw std::length_error("brute_force_density: (k, t) = (" + std::to_string(k) + ", " + std::to_string(t) +
                            ") needs 2^" + std::to_string(bits) + " residues (limit 2^" + std::to_string(max_bits) + ")");
  }
  const uint64_t modulus = uint64_t{1} << bits;
  uint64_t hits = 0;
  for (uint64_t n = 0; n + t < modulus; ++n) {
    hits += static_cast<int64_t>(sum_of_digits(n + t)) - static_cast<int64_t>(sum_of_digits(n)) == k;
  }
  return Dyadic::from_parts(static_cast<i128>(hits), static_cast<int64_t>(bits));
}

// ---------------------------------------------------------------------------
// scans

namespace {

const Dyadic kHalf = Dyadic::pow2(-1);

bool earlier_min(const Witness& cand, const std::optional<Witness>& cur) {
  return !cur || cand.value < cur->value || (cand.value == cur->value && cand.t < cur->t);
}
bool earlier_max(const Witness& cand, const std::optional<Witness>& cur) {
  return !cur || cand.value > cur->value || (cand.value == cur->value && cand.t < cur->t);
}

struct ScanAccumulator {
  const std::vector<Dyadic>* epsilons = nullptr;
  ScanReport report;

  void reset(uint64_t lo, uint64_t hi) {
    report = ScanReport{};
    report.t_lo = lo;
    report.t_hi = hi;
    for (const auto& e : *epsilons) report.epsilon_counts.push_back(EpsilonCount{e, 0});
  }

  void add(uint64_t t, const Dyadic& c, const Dyadic& c_tilde) {
    ++report.checked;
    if (c <= kHalf) report.violations_c.push_back(Witness{t, c});
    if (c_tilde > kHalf) report.violations_ctilde.push_back(Witness{t, c_tilde});
    if (Witness w{t, c}; earlier_min(w, report.min_c)) report.min_c = std::move(w);
    if (Witness w{t, c_tilde}; earlier_max(w, report.max_ctilde)) report.max_ctilde = std::move(w);
    if (c > kHalf) {
      const Dyadic excess = c - kHalf;
      for (auto& ec : report.epsilon_counts) ec.count += excess < ec.epsilon;
    }
  }

  void finish() {
    auto by_t = [](const Witness& a, const Witness& b) { return a.t < b.t; };
    std::sort(report.violations_c.begin(), report.violations_c.end(), by_t);
    std::sort(report.violations_ctilde.begin(), report.violations_ctilde.end(), by_t);
  }
};

void write_checkpoint(const std::string& path, uint64_t chunk) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp);
    out << checkpoint_line(chunk) << '\n';
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

void ScanReport::merge(const ScanReport& other) {
  if (other.t_lo != t_hi) throw std::invalid_argument("ScanReport::merge: ranges are not adjacent");
  t_hi = other.t_hi;
  checked += other.checked;
  violations_c.insert(violations_c.end(), other.violations_c.begin(), other.violations_c.end());
  violations_ctilde.insert(violations_ctilde.end(), other.violations_ctilde.begin(), other.violations_ctilde.end());
  if (other.min_c && earlier_min(*other.min_c, min_c)) min_c = other.min_c;
  if (other.max_ctilde && earlier_max(*other.max_ctilde, max_ctilde)) max_ctilde = other.max_ctilde;
  if (epsilon_counts.size() != other.epsilon_counts.size()) throw std::invalid_argument("ScanReport::merge: epsilon lists differ");
  for (size_t i = 0; i < epsilon_counts.size(); ++i) epsilon_counts[i].count += other.epsilon_counts[i].count;
}

std::string checkpoint_line(uint64_t chunk) { return "last_completed_prefix=" + to_binary(chunk); }

std::optional<uint64_t> read_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string line;
  std::getline(in, line);
  const std::string key = "last_completed_prefix=";
  if (line.rfind(key, 0) != 0) throw std::runtime_error("malformed checkpoint file " + path);
  return parse_binary(line.substr(key.size()));
}

uint64_t resume_point(uint64_t chunk) { return detail::chunk_end(chunk); }

ScanReport scan_range(uint64_t t_lo, uint64_t t_hi, const std::vector<Dyadic>& epsilons, const ScanOptions& options) {
  if (t_lo >= t_hi) throw std::invalid_argument("scan_range: empty range");
  if (!options.checkpoint_path.empty()) {
    if (auto done = read_checkpoint(options.checkpoint_path)) t_lo = std::min(t_hi, std::max(t_lo, resume_point(*done)));
  }
  ScanReport total;
  total.t_lo = total.t_hi = t_lo;
  for (const auto& e : epsilons) total.epsilon_counts.push_back(EpsilonCount{e, 0});
  if (t_lo >= t_hi) return total;

  detail::ChunkSchedule schedule;
  schedule.workers = options.workers;
  if (!options.checkpoint_path.empty()) {
    schedule.on_frontier = [&](uint64_t q) { write_checkpoint(options.checkpoint_path, q); };
  }
  auto parts = detail::run_chunks<ScanReport>(t_lo, t_hi, schedule, [&](uint64_t q, ScanReport& out) {
    ScanAccumulator acc{&epsilons, {}};
    const uint64_t lo = std::max(t_lo, detail::chunk_begin(q));
    const uint64_t hi = std::min(t_hi, detail::chunk_end(q));
    auto visit = [&](uint64_t t, const auto& col) { acc.add(t, col.sum_from(0), col.sum_from(1)); };
    detail::walk_chunk_promoting(q, lo, hi, Seed::delta, [&] { acc.reset(lo, hi); }, visit);
    acc.finish();
    out = std::move(acc.report);
  });
  for (const auto& part : parts) total.merge(part);
  return total;
}

RangeSums range_sums(uint64_t t_lo, uint64_t t_hi, unsigned workers) {
  detail::ChunkSchedule schedule;
  schedule.workers = workers;
  auto parts = detail::run_chunks<RangeSums>(t_lo, t_hi, schedule, [&](uint64_t q, RangeSums& out) {
    auto visit = [&](uint64_t, const auto& col) {
      const Dyadic c = col.sum_from(0);
      const Dyadic ctl = col.sum_from(1);
      ++out.count;
      out.sum_c += c;
      out.sum_c2 += c * c;
      out.sum_ctilde += ctl;
      out.sum_ctilde2 += ctl * ctl;
    };
    detail::walk_chunk_promoting(q, t_lo, t_hi, Seed::delta, [&] { out = RangeSums{}; }, visit);
  });
  RangeSums total;
  for (const auto& p : parts) {
    total.count += p.count;
    total.sum_c += p.sum_c;
    total.sum_c2 += p.sum_c2;
    total.sum_ctilde += p.sum_ctilde;
    total.sum_ctilde2 += p.sum_ctilde2;
  }
  return total;
}

void for_each_ct(uint64_t t_lo, uint64_t t_hi, const std::function<void(uint64_t, const Dyadic&, const Dyadic&)>& fn) {
  if (t_lo >= t_hi) return;
  struct Row {
    uint64_t t;
    Dyadic c, c_tilde;
  };
  for (uint64_t q = detail::chunk_of(t_lo); q <= detail::chunk_of(t_hi - 1); ++q) {
    std::vector<Row> rows;
    auto visit = [&](uint64_t t, const auto& col) { rows.push_back(Row{t, col.sum_from(0), col.sum_from(1)}); };
    detail::walk_chunk_promoting(q, t_lo, t_hi, Seed::delta, [&] { rows.clear(); }, visit);
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.t < b.t; });
    for (const auto& r : rows) fn(r.t, r.c, r.c_tilde);
  }
}

Witness min_pt(uint64_t t_lo, uint64_t t_hi, unsigned workers) {
  t_lo = std::max<uint64_t>(t_lo, 1);
  if (t_lo >= t_hi) throw std::invalid_argument("min_pt: empty range");
  detail::ChunkSchedule schedule;
  schedule.workers = workers;
  auto parts = detail::run_chunks<std::optional<Witness>>(t_lo, t_hi, schedule, [&](uint64_t q, std::optional<Witness>& out) {
    auto visit = [&](uint64_t t, const auto& col) {
      if (Witness w{t, col.sum_from(0)}; earlier_min(w, out)) out = std::move(w);
    };
    detail::walk_chunk_promoting(q, t_lo, t_hi, Seed::phi, [&] { out.reset(); }, visit);
  });
  std::optional<Witness> best;
  for (const auto& p : parts) {
    if (p && earlier_min(*p, best)) best = p;
  }
  return *best;
}

}  // namespace digitsum
