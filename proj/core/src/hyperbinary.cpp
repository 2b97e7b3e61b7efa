#include "digitsum/hyperbinary.hpp"

#include <algorithm>
#include <stdexcept>

#include "digitsum/digits.hpp"

namespace digitsum {

namespace {

using Counts = std::map<std::pair<unsigned, unsigned>, uint64_t>;

void expand_lsb_first(uint64_t n, std::vector<uint8_t>& tail, std::vector<HyperExpansion>& out) {
  if (n == 0) {
    out.push_back(HyperExpansion{std::vector<uint8_t>(tail.rbegin(), tail.rend())});
    return;
  }
  if (n & 1) {
    tail.push_back(1);
    expand_lsb_first(n >> 1, tail, out);
    tail.pop_back();
    return;
  }
  tail.push_back(0);
  expand_lsb_first(n >> 1, tail, out);
  tail.back() = 2;
  expand_lsb_first((n - 2) >> 1, tail, out);
  tail.pop_back();
}

// h(2u+1) from h(u) and h(u+1).
Counts odd_step(const Counts& lower, const Counts& upper) {
  Counts out;
  for (const auto& [ij, h] : lower) out[{ij.first + 1, ij.second}] += h;
  for (const auto& [ij, h] : upper) out[{ij.first, ij.second + 1}] += h;
  return out;
}

}  // namespace

uint64_t HyperExpansion::value() const {
  uint64_t v = 0;
  for (uint8_t d : digits) v = 2 * v + d;
  return v;
}

std::string HyperExpansion::to_string() const {
  std::string s;
  for (uint8_t d : digits) s.push_back(static_cast<char>('0' + d));
  return s;
}

unsigned HyperExpansion::twos() const { return static_cast<unsigned>(std::count(digits.begin(), digits.end(), 2)); }
unsigned HyperExpansion::zeros() const { return static_cast<unsigned>(std::count(digits.begin(), digits.end(), 0)); }

std::vector<HyperExpansion> enumerate_proper(uint64_t n, uint64_t max_n) {
  if (n > max_n) throw std::length_error("enumerate_proper: n = " + std::to_string(n) + " exceeds the limit " + std::to_string(max_n));
  std::vector<HyperExpansion> out;
  std::vector<uint8_t> tail;
  expand_lsb_first(n, tail, out);
  std::sort(out.begin(), out.end());
  return out;
}

uint64_t HyperbinaryCounts::at(unsigned i, unsigned j) const {
  auto it = counts.find({i, j});
  return it == counts.end() ? 0 : it->second;
}

uint64_t HyperbinaryCounts::expansions() const {
  uint64_t n = 0;
  for (const auto& [ij, h] : counts) n += h;
  return n;
}

Dyadic HyperbinaryCounts::weighted_total() const {
  Dyadic s;
  for (const auto& [ij, h] : counts) s += Dyadic::from_parts(static_cast<i128>(h), ij.first + ij.second);
  return s;
}

HyperbinaryCounts h_counts(uint64_t t, HyperMethod method, uint64_t max_t) {
  if (t == 0) throw std::domain_error("h_counts: t must be positive");
  if (t > max_t) throw std::length_error("h_counts: t = " + std::to_string(t) + " exceeds the limit " + std::to_string(max_t));
  HyperbinaryCounts result;
  result.t = t;
  if (method == HyperMethod::enumerate) {
    for (const auto& e : enumerate_proper(t - 1, max_t)) ++result.counts[{e.twos(), e.zeros()}];
    return result;
  }
  // pair (h(u), h(u+1)) along the binary digits of t, as for the density columns
  Counts lower{{{0, 0}, 1}};
  Counts upper = lower;
  for (int i = static_cast<int>(bit_length_minus_one(t)) - 1; i >= 0; --i) {
    Counts mid = odd_step(lower, upper);
    if ((t >> i) & 1) {
      lower = std::move(mid);
    } else {
      upper = std::move(mid);
    }
  }
  result.counts = std::move(lower);
  return result;
}

Dyadic phi_from_counts(const HyperbinaryCounts& h, int64_t k) {
  Dyadic s;
  for (const auto& [ij, n] : h.counts) {
    if (static_cast<int64_t>(ij.first) - static_cast<int64_t>(ij.second) == k) {
      s += Dyadic::from_parts(static_cast<i128>(n), ij.first + ij.second);
    }
  }
  return s;
}

Dyadic phi_from_hyperbinary(uint64_t t, int64_t k) { return phi_from_counts(h_counts(t), k); }

Dyadic corollary_sum(uint64_t t) {
  Dyadic s;
  for (const auto& [ij, n] : h_counts(t).counts) {
    if (ij.first >= ij.second) s += Dyadic::from_parts(static_cast<i128>(n), ij.first + ij.second);
  }
  return s;
}

}  // namespace digitsum
