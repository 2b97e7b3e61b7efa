#pragma once

// Exact truncated power series in up to three variables, rational function
// expansion, and the generating functions for the second moment of c_t and
// for c_t along t_j = (10...101)_2.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "digitsum/numeric.hpp"

namespace digitsum {

using Exponent = std::array<int, 3>;

/// Sparse polynomial in up to three variables with rational coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const Rational& c);  // NOLINT: constants convert implicitly
  Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT

  static Polynomial variable(int index);

  const std::map<Exponent, Rational>& terms() const { return terms_; }
  Rational coeff(const Exponent& e) const;
  Rational constant_term() const { return coeff({0, 0, 0}); }
  void add_term(const Exponent& e, const Rational& c);
  /// Highest exponent of variable `var`, -1 for the zero polynomial.
  int degree(int var) const;
  /// Number of variables actually used (0 to 3).
  int nvars() const;
  bool is_zero() const { return terms_.empty(); }

  Polynomial derivative(int var) const;
  Polynomial pow(unsigned n) const;
  Rational evaluate(const std::array<Rational, 3>& point) const;
  std::string to_string() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const;
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::map<Exponent, Rational> terms_;
};

/// Dense truncated series. Exponent e is stored when e[v] <= bounds[v] for
/// every variable and, if set, e[0]+e[1]+e[2] <= total_bound. Accessing any
/// other exponent throws std::out_of_range.
class TruncSeries {
 public:
  TruncSeries(int nvars, Exponent bounds, std::optional<int> total_bound = std::nullopt);
  static TruncSeries univariate(int n_max) { return TruncSeries(1, {n_max, 0, 0}); }
  static TruncSeries from_polynomial(const Polynomial& p, int nvars, Exponent bounds,
                                     std::optional<int> total_bound = std::nullopt);

  int nvars() const { return nvars_; }
  const Exponent& bounds() const { return bounds_; }
  std::optional<int> total_bound() const { return total_; }
  bool contains(const Exponent& e) const;

  const Rational& at(const Exponent& e) const;
  Rational& at(const Exponent& e);
  /// Univariate shorthand for at({n, 0, 0}).
  const Rational& operator[](int n) const { return at({n, 0, 0}); }
  Rational& operator[](int n) { return at({n, 0, 0}); }

  /// Visits every stored exponent in lexicographic order.
  void for_each(const std::function<void(const Exponent&, const Rational&)>& fn) const;
  bool is_zero() const;

  TruncSeries operator+(const TruncSeries& b) const;
  TruncSeries operator-(const TruncSeries& b) const;
  TruncSeries operator*(const TruncSeries& b) const;
  TruncSeries operator*(const Rational& c) const;
  /// Multiplicative inverse; throws std::domain_error if the constant term is 0.
  TruncSeries inverse() const;

  friend bool operator==(const TruncSeries&, const TruncSeries&) = default;

 private:
  size_t index(const Exponent& e) const;
  void require_same_shape(const TruncSeries& b) const;

  int nvars_;
  Exponent bounds_;
  std::optional<int> total_;
  std::vector<Rational> coeffs_;
};

/// numerator / prod(denominator_factors). Keeping the denominator factored
/// lets expansion divide by one short factor at a time.
struct RationalFunctionSpec {
  int nvars = 1;
  Polynomial numerator;
  std::vector<Polynomial> denominator_factors;

  Polynomial denominator() const;
};

/// Coefficients of spec up to the given bounds, exact. Throws
/// std::domain_error if a denominator factor vanishes at the origin.
TruncSeries expand(const RationalFunctionSpec& spec, Exponent bounds, std::optional<int> total_bound = std::nullopt);

// --- second moment --------------------------------------------------------

/// Denominator of the trivariate A with the nested fractions cleared, apart
/// from the factors (2-y)(2-z): H(x,y,z), with H(0,0,0) = 1 and H(1/8,1,1) = 0.
Polynomial trivariate_denominator();

/// A(x,y,z) = sum a_{lambda,k,l} x^lambda y^k z^l with
/// a_{lambda,k,l} = 4^lambda sum_{2^lambda <= t < 2^(lambda+1)} delta(lambda+1-k,t) delta(lambda+1-l,t).
RationalFunctionSpec trivariate_A();
/// F = A / ((1-y)(1-z)).
RationalFunctionSpec trivariate_F();

/// [x^n y^(n+o) z^(n+o)] F for o in {0, 1}. The dense cube behind it is
/// cached and grown on demand; throws std::length_error when n > max_n.
Rational diagonal_F(int n, int offset, int max_n = 60);
/// diagonal_F(n, offset) for n = 0..n_max from a single expansion.
std::vector<Rational> diagonal_F_sequence(int n_max, int offset, int max_n = 60);

/// Taylor coefficients in (Y, Z) = (y-1, z-1), total degree <= max_degree, of
/// the root x = f(y, z) of H(x,y,z) = 0 with f(1,1) = 1/8, by Newton
/// iteration. Throws std::runtime_error if the iteration does not converge.
TruncSeries implicit_root_series(int max_degree);
/// log(8 f) in the same variables; log f = -log 8 + log_root_series.
TruncSeries log_root_series(int max_degree);

// --- c_t along t_j --------------------------------------------------------

/// A(x,y) = sum_{j,k} delta(j-k, t_j) x^j y^k.
RationalFunctionSpec bivariate_A();
/// A(x,y) / (1-y), whose main diagonal is H(z) = sum c_{t_j} z^j.
RationalFunctionSpec bivariate_A_tilde();

struct SpecialTerm {
  int j = 0;
  BigInt t;  // t_j = (10)^(j-1) 1 in binary, t_0 = 0
  Dyadic c;
};

/// c_{t_j} for j = 0..j_max by iterating the column pair (t_j, 2 t_j + 1).
/// Cost grows like j_max^3 bit operations; throws std::length_error when
/// j_max > max_j.
std::vector<SpecialTerm> special_sequence_columns(int j_max, int max_j = 100000);

enum class HMethod {
  diagonal,     // main diagonal of the expanded A~(x,y)
  recurrence,   // column recurrence along t_j
  closed_form,  // closed form, square root expanded through its linear ODE
};

/// H(z) = sum_j c_{t_j} z^j up to z^n_max. Cost guards: diagonal 500,
/// recurrence and closed_form 10^5 (scaled by max_cost when set).
TruncSeries H_series(int n_max, HMethod method, std::optional<int> max_cost = std::nullopt);

/// -2z^3 + (2z^5-3z^4-8z^3-7z^2+32z-16) H + (z^6-5z^5-3z^4+5z^3+30z^2-44z+16) H^2.
TruncSeries minimal_polynomial_residual(const TruncSeries& H);
TruncSeries minimal_polynomial_residual(int n_max);

/// Closed form of H expanded to z^n_max with a Newton square root whose
/// branch is chosen so that the constant term is 1. Throws std::runtime_error
/// if neither branch gives 1.
TruncSeries closed_form_H_series(int n_max);
/// closed_form_H_series(n_max) == H_series(n_max, recurrence).
bool closed_form_H_check(int n_max);

/// Newton square root of a univariate series with the given constant term
/// of the root; throws std::domain_error if root0^2 != s[0].
TruncSeries sqrt_series(const TruncSeries& s, const Rational& root0);

/// "e0,e1,e2,p/q,decimal" lines, one per stored exponent, lexicographic.
std::string to_csv(const TruncSeries& s, int digits = 12);

}  // namespace digitsum
