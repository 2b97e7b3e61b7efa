#include "digitsum/moments.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "digitsum/density.hpp"
#include "digitsum/detail/scan_engine.hpp"
#include "digitsum/series.hpp"

namespace digitsum {

namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);

Rational pow2_rational(int64_t e) {
  Rational q(1);
  if (e >= 0) {
    mpz_mul_2exp(q.get_num_mpz_t(), q.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpz_mul_2exp(q.get_den_mpz_t(), q.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return q;
}

void guard_lambda(uint64_t lambda, uint64_t max_lambda, const char* what) {
  if (lambda > max_lambda) {
    throw std::length_error(std::string(what) + ": lambda = " + std::to_string(lambda) + " enumerates 2^" +
                            std::to_string(lambda) + " values (limit " + std::to_string(max_lambda) + ")");
  }
}

}  // namespace

Dyadic mean_closed_form(uint64_t lambda, MeanVariant variant) {
  // 4^lambda m = sum_{s<=top} C(2 lambda, s) (1 - 2^(s-top-1)), top = lambda+1 (c) or lambda (c~)
  const uint64_t top = variant == MeanVariant::c ? lambda + 1 : lambda;
  BigInt binom = 1;
  BigInt sum = 0;
  for (uint64_t s = 0; s <= top && s <= 2 * lambda; ++s) {
    BigInt term = binom;
    mpz_mul_2exp(term.get_mpz_t(), term.get_mpz_t(), top + 1);
    BigInt shifted = binom;
    mpz_mul_2exp(shifted.get_mpz_t(), shifted.get_mpz_t(), s);
    sum += term - shifted;
    binom = binom * (2 * lambda - s) / (s + 1);
  }
  return Dyadic::from_parts(sum, static_cast<int64_t>(2 * lambda + top + 1));
}

Dyadic ProfileReport::at(int64_t k) const {
  const int64_t k_hi = static_cast<int64_t>(lambda) + 1;
  if (k > k_hi) return Dyadic{};
  if (k >= k_lo) return m[static_cast<size_t>(k - k_lo)];
  return m.front().mul_pow2(k - k_lo);
}

Dyadic ProfileReport::total() const {
  Dyadic s = m.front();
  for (const auto& v : m) s += v;
  return s;
}

ProfileReport mean_profile(uint64_t lambda) {
  if (lambda > 10000) throw std::length_error("mean_profile: lambda must be at most 10^4");
  ProfileReport r;
  r.lambda = lambda;
  const uint64_t jmax = 2 * lambda;  // beyond this the partial sums stop changing
  r.k_lo = static_cast<int64_t>(lambda) + 1 - static_cast<int64_t>(jmax);
  std::vector<Dyadic> by_j;
  BigInt binom = 1;
  BigInt partial = 0;
  Dyadic cumulative;
  for (uint64_t j = 0; j <= jmax; ++j) {
    BigInt term = binom;
    mpz_mul_2exp(term.get_mpz_t(), term.get_mpz_t(), j);
    partial += term;
    if (j < 2 * lambda) binom = binom * (2 * lambda - j) / (j + 1);
    Dyadic mj = Dyadic::from_parts(partial, static_cast<int64_t>(2 * lambda + j + 1));
    cumulative += mj;
    by_j.push_back(mj);
    r.M.push_back(cumulative);
  }
  r.m.assign(by_j.rbegin(), by_j.rend());
  if (lambda > 0) {
    const double scale = std::sqrt(std::numbers::pi * static_cast<double>(lambda));
    const auto reach = static_cast<int64_t>(std::floor(std::sqrt(static_cast<double>(lambda))));
    for (int64_t k = -reach; k <= reach; ++k) {
      const double v = r.at(k).to_double() * scale * std::exp(static_cast<double>(k * k) / static_cast<double>(lambda));
      r.gaussian_residuals.emplace_back(k, std::abs(v - 1.0));
    }
  }
  return r;
}

bool binomial_identity_check(uint64_t lambda) {
  if (lambda > 1000) throw std::length_error("binomial_identity_check: lambda must be at most 1000");
  const auto n = static_cast<int64_t>(lambda);
  Rational lhs = 0;
  for (int64_t s = 0; s <= n; ++s) lhs += Rational(binomial_exact(2 * n, s)) * pow2_rational(s);
  Rational inner = 0;
  Rational ratio = 1;  // (2/9)^k
  for (int64_t k = 0; k <= n; ++k) {
    inner += Rational(binomial_exact(2 * k, k)) * ratio;
    ratio *= Rational(2, 9);
  }
  BigInt nine;
  mpz_ui_pow_ui(nine.get_mpz_t(), 9, lambda);
  const Rational rhs = Rational(2, 3) * pow2_rational(n) * Rational(binomial_exact(2 * n, n)) +
                       Rational(1, 2) * Rational(nine) * (1 - inner / 3);
  return lhs == rhs;
}

double MomentReport::sd_c() const { return std::sqrt(to_double(variance_c)); }
double MomentReport::sd_ctilde() const { return std::sqrt(to_double(variance_ctilde)); }

namespace {

void fill_residuals(MomentReport& r) {
  if (r.lambda == 0) return;
  const auto n = static_cast<double>(r.lambda);
  r.asym_residuals["mean_c"] = r.mean_c.to_double() - asymptotic_comparators(n, Formula::mean_c);
  r.asym_residuals["mean_ctilde"] = r.mean_ctilde.to_double() - asymptotic_comparators(n, Formula::mean_ctilde);
  r.asym_residuals["secmom_c"] = to_double(r.second_c) - asymptotic_comparators(n, Formula::secmom_c);
  r.asym_residuals["secmom_ctilde"] = to_double(r.second_ctilde) - asymptotic_comparators(n, Formula::secmom_ctilde);
  const double sigma = asymptotic_comparators(n, Formula::sigma);
  r.asym_residuals["variance_ratio_c"] = to_double(r.variance_c) / (sigma * sigma);
  r.asym_residuals["variance_ratio_ctilde"] = to_double(r.variance_ctilde) / (sigma * sigma);
}

}  // namespace

MomentReport empirical_moments(uint64_t lambda, unsigned workers, uint64_t max_lambda) {
  guard_lambda(lambda, max_lambda, "empirical_moments");
  const uint64_t lo = uint64_t{1} << lambda;
  const RangeSums sums = range_sums(lo, 2 * lo, workers);
  const auto scale = static_cast<int64_t>(lambda);
  MomentReport r;
  r.lambda = lambda;
  r.mean_c = sums.sum_c.mul_pow2(-scale);
  r.mean_ctilde = sums.sum_ctilde.mul_pow2(-scale);
  r.second_c = static_cast<Rational>(sums.sum_c2.mul_pow2(-scale));
  r.second_ctilde = static_cast<Rational>(sums.sum_ctilde2.mul_pow2(-scale));
  r.variance_c = r.second_c - static_cast<Rational>(r.mean_c * r.mean_c);
  r.variance_ctilde = r.second_ctilde - static_cast<Rational>(r.mean_ctilde * r.mean_ctilde);
  fill_residuals(r);
  return r;
}

MomentReport diagonal_moments(uint64_t lambda, int max_n) {
  const int n = static_cast<int>(lambda);
  if (lambda > static_cast<uint64_t>(max_n)) throw std::length_error("diagonal_moments: lambda exceeds the cube limit");
  MomentReport r;
  r.lambda = lambda;
  r.mean_c = mean_closed_form(lambda, MeanVariant::c);
  r.mean_ctilde = mean_closed_form(lambda, MeanVariant::ctilde);
  const Rational inv8 = pow2_rational(-3 * static_cast<int64_t>(lambda));
  r.second_c = diagonal_F(n, 1, max_n) * inv8;
  r.second_ctilde = diagonal_F(n, 0, max_n) * inv8;
  r.variance_c = r.second_c - static_cast<Rational>(r.mean_c * r.mean_c);
  r.variance_ctilde = r.second_ctilde - static_cast<Rational>(r.mean_ctilde * r.mean_ctilde);
  fill_residuals(r);
  return r;
}

Formula parse_formula(std::string_view id) {
  for (Formula f : {Formula::mean_c, Formula::mean_ctilde, Formula::secmom_c, Formula::secmom_ctilde, Formula::sigma,
                    Formula::special_c}) {
    if (formula_name(f) == id) return f;
  }
  throw std::invalid_argument("unknown formula id '" + std::string(id) + "'");
}

std::string_view formula_name(Formula f) {
  switch (f) {
    case Formula::mean_c: return "mean_c";
    case Formula::mean_ctilde: return "mean_ctilde";
    case Formula::secmom_c: return "secmom_c";
    case Formula::secmom_ctilde: return "secmom_ctilde";
    case Formula::sigma: return "sigma";
    case Formula::special_c: return "special_c";
  }
  return "?";
}

double asymptotic_comparators(double n, Formula which) {
  if (!(n >= 1)) throw std::domain_error("asymptotic_comparators: argument must be at least 1");
  const double pi = std::numbers::pi;
  const double r = std::sqrt(n);
  switch (which) {
    case Formula::mean_c:
      return 0.5 + 1 / (2 * kSqrtPi * r) + 15 / (16 * kSqrtPi * n * r);
    case Formula::mean_ctilde:
      return 0.5 - 1 / (2 * kSqrtPi * r) + 49 / (16 * kSqrtPi * n * r);
    case Formula::secmom_c:
      return 0.25 + 1 / (2 * kSqrtPi * r) + 1 / (4 * pi * n) + 15 / (16 * kSqrtPi * n * r) + 89 / (72 * pi * n * n);
    case Formula::secmom_ctilde:
      return 0.25 - 1 / (2 * kSqrtPi * r) + 1 / (4 * pi * n) + 49 / (16 * kSqrtPi * n * r) - 199 / (72 * pi * n * n);
    case Formula::sigma:
      return std::sqrt(43.0) / (12 * kSqrtPi) / n;
    case Formula::special_c:
      return 0.5 + std::sqrt(3.0) / (4 * std::sqrt(2 * pi * n));
  }
  throw std::invalid_argument("asymptotic_comparators: unknown formula");
}

namespace {

Rational ratio(uint64_t a, uint64_t b) {
  if (b == 0) return 0;
  Rational q(BigInt(std::to_string(a)), BigInt(std::to_string(b)));
  q.canonicalize();
  return q;
}

}  // namespace

Rational WindowCount::fraction() const { return ratio(joint, total); }
Rational WindowCount::c_fraction() const { return ratio(c_side, total); }
Rational WindowCount::ctilde_fraction() const { return ratio(ctilde_side, total); }

WindowCount chebyshev_window_count(uint64_t lambda, const Dyadic& epsilon, unsigned workers, uint64_t max_lambda) {
  guard_lambda(lambda, max_lambda, "chebyshev_window_count");
  const uint64_t lo = uint64_t{1} << lambda;
  const uint64_t hi = 2 * lo;
  const Dyadic half = Dyadic::pow2(-1);
  const Dyadic upper = half + epsilon;
  const Dyadic lower = half - epsilon;
  struct Counts {
    uint64_t joint = 0, c_side = 0, ctilde_side = 0;
  };
  detail::ChunkSchedule schedule;
  schedule.workers = workers;
  auto parts = detail::run_chunks<Counts>(lo, hi, schedule, [&](uint64_t q, Counts& out) {
    auto visit = [&](uint64_t, const auto& col) {
      const Dyadic c = col.sum_from(0);
      const Dyadic ct = col.sum_from(1);
      const bool c_in = half < c && c < upper;
      const bool ct_in = lower < ct && ct < half;
      out.c_side += c_in;
      out.ctilde_side += ct_in;
      out.joint += c_in && ct_in;
    };
    detail::walk_chunk_promoting(q, lo, hi, detail::Seed::delta, [&] { out = Counts{}; }, visit);
  });
  WindowCount w;
  w.lambda = lambda;
  w.epsilon = epsilon;
  w.total = hi - lo;
  for (const auto& p : parts) {
    w.joint += p.joint;
    w.c_side += p.c_side;
    w.ctilde_side += p.ctilde_side;
  }
  return w;
}

}  // namespace digitsum
