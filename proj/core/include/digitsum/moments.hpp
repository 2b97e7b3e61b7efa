#pragma once

// Means, second moments and variances of c_t and c~_t over dyadic intervals
// [2^lambda, 2^(lambda+1)), their asymptotic expansions, and the profile
// m_{k,lambda} of the averaged column.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "digitsum/numeric.hpp"

namespace digitsum {

enum class MeanVariant { c, ctilde };

/// m_lambda (c) or m~_lambda (ctilde) from the binomial sums.
Dyadic mean_closed_form(uint64_t lambda, MeanVariant variant);

struct ProfileReport {
  uint64_t lambda = 0;
  int64_t k_lo = 0;             // m_{k,lambda} = m_{k_lo,lambda} 2^(k-k_lo) below k_lo
  std::vector<Dyadic> m;        // m_{k,lambda} for k_lo <= k <= lambda+1
  std::vector<Dyadic> M;        // M_{l,lambda} = sum_{j<=l} m_{lambda+1-j,lambda}, l = 0..lambda+1-k_lo
  std::vector<std::pair<int64_t, double>> gaussian_residuals;  // |m_k sqrt(pi lambda) e^(k^2/lambda) - 1|, |k| <= sqrt(lambda)

  Dyadic at(int64_t k) const;
  /// Window plus geometric tail; equals 1.
  Dyadic total() const;
};

ProfileReport mean_profile(uint64_t lambda);

/// sum_{s<=lambda} C(2 lambda, s) 2^s against its closed form, exactly.
bool binomial_identity_check(uint64_t lambda);

struct MomentReport {
  uint64_t lambda = 0;
  Dyadic mean_c, mean_ctilde;
  Rational second_c, second_ctilde;
  Rational variance_c, variance_ctilde;
  std::map<std::string, double> asym_residuals;

  double sd_c() const;
  double sd_ctilde() const;
};

/// Moments by enumerating every t in [2^lambda, 2^(lambda+1)).
/// Throws std::length_error when lambda > max_lambda.
MomentReport empirical_moments(uint64_t lambda, unsigned workers = 1, uint64_t max_lambda = 22);

/// Moments from the closed-form means and the diagonals of F.
MomentReport diagonal_moments(uint64_t lambda, int max_n = 60);

enum class Formula { mean_c, mean_ctilde, secmom_c, secmom_ctilde, sigma, special_c };

Formula parse_formula(std::string_view id);
std::string_view formula_name(Formula f);

/// Truncated asymptotic expansion evaluated in double precision.
/// Throws std::domain_error for an argument below 1.
double asymptotic_comparators(double n, Formula which);

struct WindowCount {
  uint64_t lambda = 0;
  Dyadic epsilon;
  uint64_t total = 0;
  uint64_t joint = 0;        // 1/2-eps < c~_t < 1/2 < c_t < 1/2+eps
  uint64_t c_side = 0;       // 1/2 < c_t < 1/2+eps
  uint64_t ctilde_side = 0;  // 1/2-eps < c~_t < 1/2

  Rational fraction() const;
  Rational c_fraction() const;
  Rational ctilde_fraction() const;
};

/// Throws std::length_error when lambda > max_lambda.
WindowCount chebyshev_window_count(uint64_t lambda, const Dyadic& epsilon, unsigned workers = 1,
                                   uint64_t max_lambda = 22);

}  // namespace digitsum
