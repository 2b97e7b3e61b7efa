#include "digitsum/equivalences.hpp"

#include <stdexcept>

#include "digitsum/digits.hpp"

namespace digitsum {

namespace {

void check_alpha(int alpha, int lo) {
  if (alpha < lo || alpha > 4) {
    throw std::domain_error("alpha = " + std::to_string(alpha) + " outside the tabulated range [" + std::to_string(lo) + ", 4]");
  }
}

BlockTerm term(long num, long den, std::vector<std::string> words) {
  Rational q(num, den);
  q.canonicalize();
  return BlockTerm{q, std::move(words)};
}

std::vector<BlockTerm> column_terms(int alpha) {
  switch (alpha) {
    case 1:
      return {term(1, 1, {})};
    case 2:
      return {term(1, 1, {}), term(1, 2, {"01"})};
    case 3:
      return {term(1, 1, {}), term(3, 8, {"01"}), term(1, 1, {"011"}), term(1, 4, {"001"}), term(1, 8, {"01", "01"})};
    default:
      return {term(1, 1, {}),          term(5, 12, {"01"}),       term(1, 2, {"011"}),
              term(1, 8, {"001"}),     term(2, 1, {"0111"}),      term(1, 2, {"0101"}),
              term(1, 2, {"0011"}),    term(1, 8, {"0001"}),      term(1, 16, {"01", "01"}),
              term(1, 2, {"01", "011"}), term(1, 8, {"01", "001"}), term(1, 48, {"01", "01", "01"})};
  }
}

std::vector<BlockTerm> complement(std::vector<BlockTerm> terms) {
  for (auto& t : terms) {
    for (auto& w : t.words) {
      for (auto& ch : w) ch = ch == '0' ? '1' : '0';
    }
  }
  return terms;
}

Rational evaluate(const std::vector<BlockTerm>& terms, uint64_t t) {
  Rational sum = 0;
  for (const auto& m : terms) {
    Rational v = m.coeff;
    for (const auto& w : m.words) v *= static_cast<unsigned long>(block_count(t, BitWord(w)));
    sum += v;
  }
  return sum;
}

}  // namespace

Dyadic density_via_pochhammer(uint64_t t, uint64_t max_t) {
  if (t > max_t) {
    throw std::length_error("density_via_pochhammer: t = " + std::to_string(t) + " would enumerate 2^" +
                            std::to_string(t + 1) + " residues (limit t <= " + std::to_string(max_t) + ")");
  }
  const uint64_t period = uint64_t{1} << (t + 1);
  uint64_t hits = 0;
  for (uint64_t n = 0; n < period; ++n) hits += nu2_pochhammer(n + 1, t) < t + 1;
  return Dyadic::from_parts(static_cast<i128>(hits), static_cast<int64_t>(t + 1));
}

const std::vector<BlockTerm>& block_terms(BlockFamily family, int alpha) {
  check_alpha(alpha, 1);
  static const std::vector<BlockTerm> columns[4] = {column_terms(1), column_terms(2), column_terms(3), column_terms(4)};
  static const std::vector<BlockTerm> rows[4] = {complement(columns[0]), complement(columns[1]), complement(columns[2]),
                                                 complement(columns[3])};
  return family == BlockFamily::column ? columns[alpha - 1] : rows[alpha - 1];
}

Rational b_poly(int alpha, uint64_t t) {
  check_alpha(alpha, 0);
  if (alpha == 0) return 0;
  Rational base(1);
  mpz_mul_2exp(base.get_den_mpz_t(), base.get_den_mpz_t(), sum_of_digits(t));
  return base * evaluate(block_terms(BlockFamily::column, alpha), t);
}

Rational a_poly(int alpha, uint64_t t) {
  check_alpha(alpha, 1);
  Rational base(1);
  mpz_mul_2exp(base.get_num_mpz_t(), base.get_num_mpz_t(), sum_of_digits(t));
  return base * evaluate(block_terms(BlockFamily::row, alpha), t);
}

uint64_t row_count_direct(uint64_t t, int alpha, uint64_t max_t) {
  if (alpha < 0) throw std::domain_error("row_count_direct: alpha must be nonnegative");
  if (t > max_t) {
    throw std::length_error("row_count_direct: t = " + std::to_string(t) + " exceeds the limit " + std::to_string(max_t));
  }
  uint64_t count = 0;
  const unsigned st = sum_of_digits(t);
  for (uint64_t n = 0; n <= t; ++n) {
    count += sum_of_digits(n) + sum_of_digits(t - n) - st < static_cast<unsigned>(alpha);
  }
  return count;
}

uint64_t column_count_direct(uint64_t t, int alpha) {
  check_alpha(alpha, 0);
  if (t == 0) throw std::domain_error("column_count_direct: t must be positive");
  const unsigned lambda = static_cast<unsigned>(alpha) + bit_length_minus_one(t);
  uint64_t count = 0;
  for (uint64_t n = 0; n < (uint64_t{1} << lambda); ++n) count += nu2_binomial(n, t) < static_cast<unsigned>(alpha);
  return count;
}

uint64_t zabek_period(uint64_t t, int alpha, unsigned max_bits) {
  if (t == 0) throw std::domain_error("zabek_period: t must be positive");
  if (alpha < 1) throw std::domain_error("zabek_period: alpha must be positive");
  const unsigned bits = static_cast<unsigned>(alpha) + bit_length_minus_one(t);
  if (bits > max_bits || bits > 40) {
    throw std::length_error("zabek_period: candidate period 2^" + std::to_string(bits) + " exceeds the limit 2^" +
                            std::to_string(max_bits));
  }
  const uint64_t candidate = uint64_t{1} << bits;
  const uint64_t mask = (uint64_t{1} << alpha) - 1;

  // C(n, t) mod 2^alpha for n < 2 * candidate, tracking the valuation and the
  // odd part modulo 2^alpha through C(n+1, t) = C(n, t) (n+1) / (n+1-t).
  auto inverse = [mask](uint64_t odd) {
    uint64_t x = 1;
    for (int i = 0; i < 6; ++i) x *= 2 - odd * x;
    return x & mask;
  };
  std::vector<uint64_t> seq(2 * candidate, 0);
  uint64_t val = 0;
  uint64_t odd = 1;
  for (uint64_t n = t; n < seq.size(); ++n) {
    if (n > t) {
      const unsigned up = nu2(n);
      const unsigned down = nu2(n - t);
      val = val + up - down;
      odd = (odd * ((n >> up) & mask)) & mask;
      odd = (odd * inverse((n - t) >> down)) & mask;
    }
    seq[n] = val >= static_cast<uint64_t>(alpha) ? 0 : (odd << val) & mask;
  }

  auto is_period = [&](uint64_t p) {
    for (uint64_t n = 0; n + p < seq.size(); ++n) {
      if (seq[n] != seq[n + p]) return false;
    }
    return true;
  };
  if (!is_period(candidate)) throw std::logic_error("zabek_period: 2^(alpha+mu) is not a period");
  uint64_t period = candidate;
  while (period > 1 && is_period(period / 2)) period /= 2;
  return period;
}

}  // namespace digitsum
