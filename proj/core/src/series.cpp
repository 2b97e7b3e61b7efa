#include "digitsum/series.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "digitsum/detail/column_kernel.hpp"

namespace digitsum {

namespace {

Exponent add(const Exponent& a, const Exponent& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }

bool fits_under(const Exponent& d, const Exponent& e) { return d[0] <= e[0] && d[1] <= e[1] && d[2] <= e[2]; }

Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

bool is_signed_pow2(const Rational& q) {
  if (q.get_den() != 1) return mpz_popcount(q.get_den_mpz_t()) == 1 && abs(q.get_num()) == 1;
  return mpz_popcount(BigInt(abs(q.get_num())).get_mpz_t()) == 1;
}

}  // namespace

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(const Rational& c) {
  if (sgn(c) != 0) terms_[{0, 0, 0}] = c;
}

Polynomial Polynomial::variable(int index) {
  if (index < 0 || index > 2) throw std::out_of_range("Polynomial::variable: index must be 0, 1 or 2");
  Polynomial p;
  Exponent e{0, 0, 0};
  e[static_cast<size_t>(index)] = 1;
  p.terms_[e] = 1;
  return p;
}

Rational Polynomial::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Exponent& e, const Rational& c) {
  for (int v : e) {
    if (v < 0) throw std::invalid_argument("Polynomial: negative exponent");
  }
  Rational& slot = terms_[e];
  slot += c;
  if (sgn(slot) == 0) terms_.erase(e);
}

int Polynomial::degree(int var) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<size_t>(var)]);
  return d;
}

int Polynomial::nvars() const {
  int n = 0;
  for (const auto& [e, c] : terms_) {
    for (int v = 0; v < 3; ++v) {
      if (e[static_cast<size_t>(v)] > 0) n = std::max(n, v + 1);
    }
  }
  return n;
}

Polynomial Polynomial::derivative(int var) const {
  Polynomial out;
  const auto v = static_cast<size_t>(var);
  for (const auto& [e, c] : terms_) {
    if (e[v] == 0) continue;
    Exponent d = e;
    --d[v];
    out.add_term(d, c * e[v]);
  }
  return out;
}

Polynomial Polynomial::pow(unsigned n) const {
  Polynomial out(1);
  for (unsigned i = 0; i < n; ++i) out = out * *this;
  return out;
}

Rational Polynomial::evaluate(const std::array<Rational, 3>& point) const {
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (size_t v = 0; v < 3; ++v) {
      for (int i = 0; i < e[v]; ++i) term *= point[v];
    }
    sum += term;
  }
  return sum;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  static const char* names[3] = {"x", "y", "z"};
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono;
    for (size_t v = 0; v < 3; ++v) {
      if (e[v] == 0) continue;
      mono += names[v];
      if (e[v] > 1) mono += "^" + std::to_string(e[v]);
    }
    Rational mag = abs(c);
    std::string coef = mag == 1 && !mono.empty() ? "" : digitsum::to_string(mag);
    if (!coef.empty() && !mono.empty()) coef += "*";
    if (out.empty()) {
      out = (sgn(c) < 0 ? "-" : "") + coef + mono;
    } else {
      out += (sgn(c) < 0 ? " - " : " + ") + coef + mono;
    }
  }
  return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  Polynomial out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, c);
  return out;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial Polynomial::operator-() const {
  Polynomial out;
  for (const auto& [e, c] : terms_) out.terms_[e] = -c;
  return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) out.add_term(add(ea, eb), ca * cb);
  }
  return out;
}

// ---------------------------------------------------------------------------
// TruncSeries

TruncSeries::TruncSeries(int nvars, Exponent bounds, std::optional<int> total_bound)
    : nvars_(nvars), bounds_(bounds), total_(total_bound) {
  if (nvars < 1 || nvars > 3) throw std::invalid_argument("TruncSeries: 1 to 3 variables");
  for (int v = 0; v < 3; ++v) {
    if (v >= nvars) bounds_[static_cast<size_t>(v)] = 0;
    if (bounds_[static_cast<size_t>(v)] < 0) throw std::invalid_argument("TruncSeries: negative bound");
  }
  coeffs_.assign(static_cast<size_t>(bounds_[0] + 1) * static_cast<size_t>(bounds_[1] + 1) * static_cast<size_t>(bounds_[2] + 1),
                 Rational(0));
}

TruncSeries TruncSeries::from_polynomial(const Polynomial& p, int nvars, Exponent bounds, std::optional<int> total_bound) {
  TruncSeries s(nvars, bounds, total_bound);
  for (const auto& [e, c] : p.terms()) {
    if (s.contains(e)) s.at(e) = c;
  }
  return s;
}

bool TruncSeries::contains(const Exponent& e) const {
  for (size_t v = 0; v < 3; ++v) {
    if (e[v] < 0 || e[v] > bounds_[v]) return false;
  }
  return !total_ || e[0] + e[1] + e[2] <= *total_;
}

size_t TruncSeries::index(const Exponent& e) const {
  if (!contains(e)) {
    throw std::out_of_range("TruncSeries: exponent (" + std::to_string(e[0]) + "," + std::to_string(e[1]) + "," +
                            std::to_string(e[2]) + ") outside the truncation");
  }
  return (static_cast<size_t>(e[0]) * static_cast<size_t>(bounds_[1] + 1) + static_cast<size_t>(e[1])) *
             static_cast<size_t>(bounds_[2] + 1) +
         static_cast<size_t>(e[2]);
}

const Rational& TruncSeries::at(const Exponent& e) const { return coeffs_[index(e)]; }
Rational& TruncSeries::at(const Exponent& e) { return coeffs_[index(e)]; }

void TruncSeries::for_each(const std::function<void(const Exponent&, const Rational&)>& fn) const {
  for (int a = 0; a <= bounds_[0]; ++a) {
    for (int b = 0; b <= bounds_[1]; ++b) {
      for (int c = 0; c <= bounds_[2]; ++c) {
        const Exponent e{a, b, c};
        if (contains(e)) fn(e, coeffs_[index(e)]);
      }
    }
  }
}

bool TruncSeries::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

void TruncSeries::require_same_shape(const TruncSeries& b) const {
  if (nvars_ != b.nvars_ || bounds_ != b.bounds_ || total_ != b.total_) {
    throw std::invalid_argument("TruncSeries: operands have different truncations");
  }
}

TruncSeries TruncSeries::operator+(const TruncSeries& b) const {
  require_same_shape(b);
  TruncSeries out = *this;
  for (size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] += b.coeffs_[i];
  return out;
}

TruncSeries TruncSeries::operator-(const TruncSeries& b) const {
  require_same_shape(b);
  TruncSeries out = *this;
  for (size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] -= b.coeffs_[i];
  return out;
}

TruncSeries TruncSeries::operator*(const Rational& c) const {
  TruncSeries out = *this;
  for (auto& q : out.coeffs_) q *= c;
  return out;
}

TruncSeries TruncSeries::operator*(const TruncSeries& b) const {
  require_same_shape(b);
  TruncSeries out(nvars_, bounds_, total_);
  std::vector<std::pair<Exponent, const Rational*>> nonzero;
  b.for_each([&](const Exponent& e, const Rational& q) {
    if (sgn(q) != 0) nonzero.emplace_back(e, &q);
  });
  for_each([&](const Exponent& ea, const Rational& qa) {
    if (sgn(qa) == 0) return;
    for (const auto& [eb, qb] : nonzero) {
      const Exponent e = add(ea, eb);
      if (out.contains(e)) out.coeffs_[out.index(e)] += qa * *qb;
    }
  });
  return out;
}

TruncSeries TruncSeries::inverse() const {
  const Rational c0 = at({0, 0, 0});
  if (sgn(c0) == 0) throw std::domain_error("TruncSeries::inverse: zero constant term");
  std::vector<std::pair<Exponent, Rational>> rest;
  for_each([&](const Exponent& e, const Rational& q) {
    if (sgn(q) != 0 && e != Exponent{0, 0, 0}) rest.emplace_back(e, q);
  });
  TruncSeries out(nvars_, bounds_, total_);
  for_each([&](const Exponent& e, const Rational&) {
    Rational acc = e == Exponent{0, 0, 0} ? Rational(1) : Rational(0);
    for (const auto& [d, q] : rest) {
      if (fits_under(d, e)) acc -= q * out.at({e[0] - d[0], e[1] - d[1], e[2] - d[2]});
    }
    out.at(e) = acc / c0;
  });
  return out;
}

// ---------------------------------------------------------------------------
// expansion

Polynomial RationalFunctionSpec::denominator() const {
  Polynomial d(1);
  for (const auto& f : denominator_factors) d = d * f;
  return d;
}

namespace {

template <class Num>
Num convert(const Rational& q);
template <>
Rational convert<Rational>(const Rational& q) {
  return q;
}
template <>
Dyadic convert<Dyadic>(const Rational& q) {
  return Dyadic::from_rational(q);
}

// Dense box with lexicographic layout; entries outside the total bound stay 0.
template <class Num>
struct DenseBox {
  Exponent bounds;
  std::optional<int> total;
  size_t stride0 = 0, stride1 = 0;
  std::vector<Num> v;

  DenseBox(Exponent b, std::optional<int> t) : bounds(b), total(t) {
    stride1 = static_cast<size_t>(b[2] + 1);
    stride0 = static_cast<size_t>(b[1] + 1) * stride1;
    v.assign(static_cast<size_t>(b[0] + 1) * stride0, Num{});
  }
  size_t offset(const Exponent& e) const {
    return static_cast<size_t>(e[0]) * stride0 + static_cast<size_t>(e[1]) * stride1 + static_cast<size_t>(e[2]);
  }
  bool inside(const Exponent& e) const {
    return fits_under(e, bounds) && (!total || e[0] + e[1] + e[2] <= *total);
  }
};

template <class Num>
Num divide_by_constant(const Num& a, const Rational& c0);
template <>
Rational divide_by_constant<Rational>(const Rational& a, const Rational& c0) {
  return a / c0;
}
template <>
Dyadic divide_by_constant<Dyadic>(const Dyadic& a, const Rational& c0) {
  // c0 = +-2^k
  const int64_t k = static_cast<int64_t>(mpz_sizeinbase(c0.get_num_mpz_t(), 2)) -
                    static_cast<int64_t>(mpz_sizeinbase(c0.get_den_mpz_t(), 2));
  Dyadic q = a.mul_pow2(-k);
  return sgn(c0) < 0 ? -q : q;
}

// In place: box <- box / factor, in lexicographic order.
template <class Num>
void divide_in_place(DenseBox<Num>& box, const Polynomial& factor) {
  const Rational c0 = factor.constant_term();
  struct Term {
    Exponent d;
    size_t off;
    Num c;
  };
  std::vector<Term> rest;
  for (const auto& [d, c] : factor.terms()) {
    if (d != Exponent{0, 0, 0}) rest.push_back(Term{d, box.offset(d), convert<Num>(c)});
  }
  const Exponent& b = box.bounds;
  for (int e0 = 0; e0 <= b[0]; ++e0) {
    for (int e1 = 0; e1 <= b[1]; ++e1) {
      for (int e2 = 0; e2 <= b[2]; ++e2) {
        const Exponent e{e0, e1, e2};
        if (box.total && e0 + e1 + e2 > *box.total) break;
        const size_t at = box.offset(e);
        Num acc = box.v[at];
        for (const auto& t : rest) {
          if (fits_under(t.d, e)) acc -= t.c * box.v[at - t.off];
        }
        box.v[at] = divide_by_constant<Num>(acc, c0);
      }
    }
  }
}

template <class Num>
DenseBox<Num> expand_dense(const RationalFunctionSpec& spec, Exponent bounds, std::optional<int> total) {
  DenseBox<Num> box(bounds, total);
  for (const auto& [e, c] : spec.numerator.terms()) {
    if (box.inside(e)) box.v[box.offset(e)] = convert<Num>(c);
  }
  for (const auto& f : spec.denominator_factors) divide_in_place(box, f);
  return box;
}

bool dyadic_friendly(const RationalFunctionSpec& spec) {
  auto all_dyadic = [](const Polynomial& p) {
    return std::all_of(p.terms().begin(), p.terms().end(), [](const auto& kv) { return is_dyadic(kv.second); });
  };
  if (!all_dyadic(spec.numerator)) return false;
  for (const auto& f : spec.denominator_factors) {
    if (!all_dyadic(f) || !is_signed_pow2(f.constant_term())) return false;
  }
  return true;
}

void check_spec(const RationalFunctionSpec& spec, const Exponent& bounds) {
  for (const auto& f : spec.denominator_factors) {
    if (sgn(f.constant_term()) == 0) throw std::domain_error("expand: denominator factor vanishes at the origin");
  }
  for (int v = 0; v < 3; ++v) {
    if (bounds[static_cast<size_t>(v)] < 0) throw std::invalid_argument("expand: negative bound");
  }
}

}  // namespace

TruncSeries expand(const RationalFunctionSpec& spec, Exponent bounds, std::optional<int> total_bound) {
  check_spec(spec, bounds);
  TruncSeries out(spec.nvars, bounds, total_bound);
  const Exponent b = out.bounds();
  if (dyadic_friendly(spec)) {
    auto box = expand_dense<Dyadic>(spec, b, total_bound);
    out.for_each([&](const Exponent& e, const Rational&) { out.at(e) = static_cast<Rational>(box.v[box.offset(e)]); });
  } else {
    auto box = expand_dense<Rational>(spec, b, total_bound);
    out.for_each([&](const Exponent& e, const Rational&) { out.at(e) = box.v[box.offset(e)]; });
  }
  return out;
}

// ---------------------------------------------------------------------------
// trivariate generating function

namespace {

const Polynomial kX = Polynomial::variable(0);
const Polynomial kY = Polynomial::variable(1);
const Polynomial kZ = Polynomial::variable(2);

struct Cleared {
  Polynomial numerator;
  Polynomial denominator;
};

Cleared cleared_trivariate() {
  const Polynomial w = 1 + kY * kZ;
  const Polynomial u = 1 - 2 * kX * kZ * w;
  const Polynomial v = 1 - 2 * kX * kY * w;
  Cleared c;
  c.numerator = u * v + kX * kZ.pow(2) * v + kX * kY.pow(2) * u;
  c.denominator = (1 - kX * w.pow(2)) * u * v - kX * kY * kZ * (u + v);
  return c;
}

}  // namespace

Polynomial trivariate_denominator() { return cleared_trivariate().denominator; }

RationalFunctionSpec trivariate_A() {
  const Cleared c = cleared_trivariate();
  return RationalFunctionSpec{3, c.numerator, {c.denominator, 2 - kY, 2 - kZ}};
}

RationalFunctionSpec trivariate_F() {
  RationalFunctionSpec spec = trivariate_A();
  spec.denominator_factors.push_back(1 - kY);
  spec.denominator_factors.push_back(1 - kZ);
  return spec;
}

namespace {

struct DiagonalCache {
  std::mutex mu;
  int n = -1;
  std::vector<Rational> offset0, offset1;
};

DiagonalCache& diagonal_cache() {
  static DiagonalCache cache;
  return cache;
}

void check_diagonal_request(int n, int offset, int max_n) {
  if (n < 0) throw std::invalid_argument("diagonal_F: n must be nonnegative");
  if (offset != 0 && offset != 1) throw std::invalid_argument("diagonal_F: offset must be 0 or 1");
  if (n > max_n) {
    throw std::length_error("diagonal_F: n = " + std::to_string(n) + " needs a dense cube of " +
                            std::to_string(static_cast<int64_t>(n + 1) * (n + 2) * (n + 2)) +
                            " coefficients (limit n <= " + std::to_string(max_n) + ")");
  }
}

}  // namespace

std::vector<Rational> diagonal_F_sequence(int n_max, int offset, int max_n) {
  check_diagonal_request(n_max, offset, max_n);
  auto& cache = diagonal_cache();
  std::lock_guard lock(cache.mu);
  if (cache.n < n_max) {
    const int n = std::max(n_max, std::min(2 * cache.n, max_n));
    auto box = expand_dense<Dyadic>(trivariate_F(), {n, n + 1, n + 1}, std::nullopt);
    cache.offset0.clear();
    cache.offset1.clear();
    for (int i = 0; i <= n; ++i) {
      cache.offset0.push_back(box.v[box.offset({i, i, i})]);
      cache.offset1.push_back(box.v[box.offset({i, i + 1, i + 1})]);
    }
    cache.n = n;
  }
  const auto& src = offset == 0 ? cache.offset0 : cache.offset1;
  return std::vector<Rational>(src.begin(), src.begin() + n_max + 1);
}

Rational diagonal_F(int n, int offset, int max_n) { return diagonal_F_sequence(n, offset, max_n).back(); }

// ---------------------------------------------------------------------------
// implicit root

namespace {

// P(x, 1+Y, 1+Z) grouped by powers of x; entry a is a polynomial in
// Y (variable 0) and Z (variable 1).
std::vector<Polynomial> shift_to_unit_point(const Polynomial& p) {
  std::vector<Polynomial> by_x(static_cast<size_t>(std::max(0, p.degree(0)) + 1));
  const Polynomial Y1 = 1 + Polynomial::variable(0);
  const Polynomial Z1 = 1 + Polynomial::variable(1);
  for (const auto& [e, c] : p.terms()) by_x[static_cast<size_t>(e[0])] = by_x[static_cast<size_t>(e[0])] + Y1.pow(static_cast<unsigned>(e[1])) * Z1.pow(static_cast<unsigned>(e[2])) * c;
  return by_x;
}

TruncSeries evaluate_at_root(const std::vector<Polynomial>& by_x, const TruncSeries& f) {
  TruncSeries acc(f.nvars(), f.bounds(), f.total_bound());
  for (auto it = by_x.rbegin(); it != by_x.rend(); ++it) {
    acc = acc * f + TruncSeries::from_polynomial(*it, f.nvars(), f.bounds(), f.total_bound());
  }
  return acc;
}

unsigned newton_rounds(int degree) {
  unsigned r = 1;
  while ((1 << (r - 1)) < degree + 1) ++r;
  return r + 1;
}

}  // namespace

TruncSeries implicit_root_series(int max_degree) {
  if (max_degree < 0 || max_degree > 12) throw std::length_error("implicit_root_series: degree must lie in [0, 12]");
  const Polynomial H = trivariate_denominator();
  const auto h = shift_to_unit_point(H);
  const auto hx = shift_to_unit_point(H.derivative(0));
  TruncSeries f(2, {max_degree, max_degree, 0}, max_degree);
  f.at({0, 0, 0}) = rat(1, 8);
  for (unsigned round = 0; round < newton_rounds(max_degree); ++round) {
    f = f - evaluate_at_root(h, f) * evaluate_at_root(hx, f).inverse();
  }
  if (!evaluate_at_root(h, f).is_zero()) {
    throw std::runtime_error("implicit_root_series: Newton iteration did not converge");
  }
  return f;
}

TruncSeries log_root_series(int max_degree) {
  const TruncSeries f = implicit_root_series(max_degree);
  TruncSeries g = f * Rational(8);
  g.at({0, 0, 0}) -= 1;
  TruncSeries power = g;
  TruncSeries out(2, f.bounds(), f.total_bound());
  for (int m = 1; m <= max_degree; ++m) {
    out = out + power * rat(m % 2 == 1 ? 1 : -1, m);
    power = power * g;
  }
  return out;
}

// ---------------------------------------------------------------------------
// bivariate A and H

RationalFunctionSpec bivariate_A() {
  const Polynomial x = Polynomial::variable(0);
  const Polynomial y = Polynomial::variable(1);
  const Polynomial numerator = 2 * x * y.pow(3) - 3 * x * y.pow(2) - 4 * y + 8;
  const Polynomial q = x.pow(2) * y.pow(2) - 2 * x * y.pow(2) - x * y - 2 * x + 4;
  return RationalFunctionSpec{2, numerator, {q, 2 - y}};
}

RationalFunctionSpec bivariate_A_tilde() {
  RationalFunctionSpec spec = bivariate_A();
  spec.denominator_factors.push_back(1 - Polynomial::variable(1));
  return spec;
}

namespace {

template <class Int>
detail::ScaledColumn<BigInt> to_big(const detail::ScaledColumn<Int>& c) {
  if constexpr (std::is_same_v<Int, BigInt>) {
    return c;
  } else {
    detail::ScaledColumn<BigInt> out{c.lo, c.exp, {}};
    for (const auto& v : c.num) out.num.push_back(to_bigint(v));
    return out;
  }
}

}  // namespace

std::vector<SpecialTerm> special_sequence_columns(int j_max, int max_j) {
  if (j_max < 0) throw std::invalid_argument("special_sequence_columns: j_max must be nonnegative");
  if (j_max > max_j) {
    throw std::length_error("special_sequence_columns: j_max = " + std::to_string(j_max) + " exceeds the limit " +
                            std::to_string(max_j));
  }
  std::vector<SpecialTerm> out;
  out.reserve(static_cast<size_t>(j_max) + 1);
  out.push_back(SpecialTerm{0, BigInt(0), Dyadic(1)});
  BigInt t = 0;

  // T = delta(., t_j), U = delta(., 2 t_j + 1); start at j = 0 with t_0 = 0.
  auto small_T = detail::point_mass_seed<u128>();
  auto small_U = detail::delta_seed<u128>();
  int j = 1;
  try {
    for (; j <= j_max; ++j) {
      auto T = detail::step(small_T, small_U);
      auto U = detail::step(T, small_U);
      small_T = std::move(T);
      small_U = std::move(U);
      t = 4 * t + 1;
      out.push_back(SpecialTerm{j, t, small_T.sum_from(0)});
    }
    return out;
  } catch (const detail::KernelOverflow&) {
  }
  auto T = to_big(small_T);
  auto U = to_big(small_U);
  for (; j <= j_max; ++j) {
    T = detail::step(T, U);
    U = detail::step(T, U);
    t = 4 * t + 1;
    out.push_back(SpecialTerm{j, t, T.sum_from(0)});
  }
  return out;
}

namespace {

std::vector<int64_t> int_coeffs(const Polynomial& p) {
  std::vector<int64_t> out(static_cast<size_t>(std::max(0, p.degree(0)) + 1), 0);
  for (const auto& [e, c] : p.terms()) {
    if (c.get_den() != 1 || !c.get_num().fits_slong_p()) throw std::logic_error("int_coeffs: non-integral coefficient");
    out[static_cast<size_t>(e[0])] = c.get_num().get_si();
  }
  return out;
}

// num / den to n_max + 1 terms; den[0] must be +-2^k.
std::vector<Dyadic> divide_series(std::vector<Dyadic> num, const std::vector<int64_t>& den) {
  const Rational c0(den[0]);
  for (size_t n = 0; n < num.size(); ++n) {
    Dyadic acc = num[n];
    for (size_t i = 1; i < den.size() && i <= n; ++i) {
      if (den[i] != 0) acc -= Dyadic(den[i]) * num[n - i];
    }
    num[n] = divide_by_constant<Dyadic>(acc, c0);
  }
  return num;
}

std::vector<Dyadic> multiply_series(const std::vector<Dyadic>& s, const std::vector<int64_t>& p) {
  std::vector<Dyadic> out(s.size());
  for (size_t n = 0; n < s.size(); ++n) {
    for (size_t i = 0; i < p.size() && i <= n; ++i) {
      if (p[i] != 0) out[n] += Dyadic(p[i]) * s[n - i];
    }
  }
  return out;
}

const Polynomial kZv = Polynomial::variable(0);
const Polynomial kQ = kZv.pow(2) + 3 * kZv + 4;
const Polynomial kR = kZv.pow(2) - 6 * kZv + 4;
const Polynomial kDisc = (kZv - 1) * (kZv - 4) * kQ;

// H by the closed form, where sqrt(disc) satisfies 2 disc S' = disc' S.
std::vector<Dyadic> closed_form_by_ode(int n_max) {
  const auto disc = int_coeffs(kDisc);
  const auto ddisc = int_coeffs(kDisc.derivative(0));
  const size_t n = static_cast<size_t>(n_max) + 1;
  std::vector<Dyadic> S(n);
  S[0] = 4;
  for (size_t m = 0; m + 1 < n; ++m) {
    Dyadic acc;
    for (size_t i = 0; i < ddisc.size() && i <= m; ++i) acc += Dyadic(ddisc[i]) * S[m - i];
    for (size_t i = 1; i < disc.size() && i <= m + 1; ++i) {
      acc -= Dyadic(2 * disc[i] * static_cast<int64_t>(m + 1 - i)) * S[m + 1 - i];
    }
    S[m + 1] = divide_exact(acc, 2 * disc[0] * static_cast<int64_t>(m + 1));
  }
  // 48 R2 = N / D with D = q r (z - 1)
  const Polynomial N = 3 * kZv * kR * (kZv - 1) + 4 * kR * (kZv - 1) + 8 * kQ * (kZv - 1) - 3 * kQ * kR;
  const auto V = divide_series(multiply_series(S, int_coeffs(N)), int_coeffs(kQ * kR * (kZv - 1)));
  std::vector<Dyadic> unit(n);
  unit[0] = 1;
  const auto E = divide_series(unit, int_coeffs(kR));
  std::vector<Dyadic> H(n);
  for (size_t m = 0; m < n; ++m) {
    Dyadic r1 = Dyadic::pow2(-1);
    if (m >= 1) r1 -= E[m - 1].halve();
    H[m] = r1 + divide_exact(V[m], 48);
  }
  return H;
}

TruncSeries to_univariate(const std::vector<Dyadic>& v) {
  TruncSeries s = TruncSeries::univariate(static_cast<int>(v.size()) - 1);
  for (size_t i = 0; i < v.size(); ++i) s[static_cast<int>(i)] = static_cast<Rational>(v[i]);
  return s;
}

TruncSeries poly_series(const Polynomial& p, int n_max) {
  return TruncSeries::from_polynomial(p, 1, {n_max, 0, 0});
}

}  // namespace

TruncSeries H_series(int n_max, HMethod method, std::optional<int> max_cost) {
  if (n_max < 0) throw std::invalid_argument("H_series: n_max must be nonnegative");
  const int limit = max_cost ? *max_cost : (method == HMethod::diagonal ? 500 : 100000);
  if (n_max > limit) {
    throw std::length_error("H_series: n_max = " + std::to_string(n_max) + " exceeds the limit " + std::to_string(limit));
  }
  switch (method) {
    case HMethod::diagonal: {
      auto box = expand_dense<Dyadic>(bivariate_A_tilde(), {n_max, n_max, 0}, std::nullopt);
      std::vector<Dyadic> diag;
      for (int i = 0; i <= n_max; ++i) diag.push_back(box.v[box.offset({i, i, 0})]);
      return to_univariate(diag);
    }
    case HMethod::recurrence: {
      std::vector<Dyadic> c;
      for (const auto& term : special_sequence_columns(n_max, limit)) c.push_back(term.c);
      return to_univariate(c);
    }
    case HMethod::closed_form:
      return to_univariate(closed_form_by_ode(n_max));
  }
  throw std::invalid_argument("H_series: unknown method");
}

TruncSeries minimal_polynomial_residual(const TruncSeries& H) {
  const int n = H.bounds()[0];
  const Polynomial z = kZv;
  const Polynomial p0 = -2 * z.pow(3);
  const Polynomial p1 = 2 * z.pow(5) - 3 * z.pow(4) - 8 * z.pow(3) - 7 * z.pow(2) + 32 * z - 16;
  const Polynomial p2 = z.pow(6) - 5 * z.pow(5) - 3 * z.pow(4) + 5 * z.pow(3) + 30 * z.pow(2) - 44 * z + 16;
  return poly_series(p0, n) + poly_series(p1, n) * H + poly_series(p2, n) * H * H;
}

TruncSeries minimal_polynomial_residual(int n_max) {
  if (n_max > 500) throw std::length_error("minimal_polynomial_residual: n_max must be at most 500");
  return minimal_polynomial_residual(H_series(n_max, HMethod::recurrence));
}

TruncSeries sqrt_series(const TruncSeries& s, const Rational& root0) {
  if (s.nvars() != 1) throw std::invalid_argument("sqrt_series: univariate series expected");
  if (root0 * root0 != s[0]) throw std::domain_error("sqrt_series: root0^2 differs from the constant term");
  const int n = s.bounds()[0];
  TruncSeries r = TruncSeries::univariate(n);
  r[0] = root0;
  for (unsigned round = 0; round < newton_rounds(n); ++round) r = (r + s * r.inverse()) * rat(1, 2);
  if (!(r * r - s).is_zero()) throw std::runtime_error("sqrt_series: Newton iteration did not converge");
  return r;
}

TruncSeries closed_form_H_series(int n_max) {
  if (n_max < 0 || n_max > 500) throw std::length_error("closed_form_H_series: n_max must lie in [0, 500]");
  const auto ser = [n_max](const Polynomial& p) { return poly_series(p, n_max); };
  const Polynomial z = kZv;
  const TruncSeries disc = ser(kDisc);
  const TruncSeries inv_q = ser(kQ).inverse();
  const TruncSeries inv_r = ser(kR).inverse();
  const TruncSeries inv_zm1 = ser(z - 1).inverse();
  const TruncSeries r1 = inv_zm1 * rat(-1, 2) - ser(z) * inv_r * rat(1, 2);
  const TruncSeries r2 = ser(z) * inv_q * rat(1, 16) + inv_q * rat(1, 12) + inv_r * rat(1, 6) - inv_zm1 * rat(1, 16);
  for (long branch : {4L, -4L}) {
    TruncSeries H = r1 + r2 * sqrt_series(disc, Rational(branch));
    if (H[0] == 1) return H;
  }
  throw std::runtime_error("closed_form_H_series: neither square-root branch gives [z^0]H = 1");
}

bool closed_form_H_check(int n_max) {
  if (n_max > 200) throw std::length_error("closed_form_H_check: n_max must be at most 200");
  return closed_form_H_series(n_max) == H_series(n_max, HMethod::recurrence);
}

std::string to_csv(const TruncSeries& s, int digits) {
  std::ostringstream out;
  out << "e0,e1,e2,value,decimal\n";
  s.for_each([&](const Exponent& e, const Rational& q) {
    out << e[0] << ',' << e[1] << ',' << e[2] << ',' << to_string(q) << ',' << to_decimal(q, digits) << '\n';
  });
  return out.str();
}

}  // namespace digitsum
