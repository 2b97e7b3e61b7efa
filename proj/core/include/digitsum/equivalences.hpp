#pragma once

// Reformulations of c_t through Pochhammer symbols, Pascal columns and rows
// modulo powers of two, and the period of C(n, t) mod 2^alpha.

#include <cstdint>
#include <string>
#include <vector>

#include "digitsum/numeric.hpp"

namespace digitsum {

/// |{n < 2^(t+1) : 2^(t+1) does not divide (n+1)_t}| / 2^(t+1).
/// Throws std::length_error when t > max_t.
Dyadic density_via_pochhammer(uint64_t t, uint64_t max_t = 18);

/// One monomial coeff * prod |t|_w over the listed words.
struct BlockTerm {
  Rational coeff;
  std::vector<std::string> words;
};

enum class BlockFamily { column, row };

/// Printed monomials of b_{2^alpha}/b_2 (column) or a_{2^alpha}/a_2 (row),
/// 1 <= alpha <= 4. The constant term is the monomial with no words.
const std::vector<BlockTerm>& block_terms(BlockFamily family, int alpha);

/// dens{n : 2^alpha does not divide C(n+t, t)}, 0 <= alpha <= 4.
Rational b_poly(int alpha, uint64_t t);
/// |{n <= t : 2^alpha does not divide C(t, n)}|, 1 <= alpha <= 4.
Rational a_poly(int alpha, uint64_t t);

/// a_{2^alpha}(t) by scanning the row with Legendre valuations.
/// Throws std::length_error when t > max_t.
uint64_t row_count_direct(uint64_t t, int alpha, uint64_t max_t = uint64_t{1} << 14);

/// |{n < 2^lambda : 2^alpha does not divide C(n+t, t)}| with
/// lambda = alpha + floor(log2 t), the recount behind b_poly.
uint64_t column_count_direct(uint64_t t, int alpha);

/// Shortest period of (C(n, t) mod 2^alpha)_n, found by testing the powers of
/// two up to 2^(alpha+mu) on the first two candidate periods.
/// Throws std::length_error when alpha + mu > max_bits.
uint64_t zabek_period(uint64_t t, int alpha, unsigned max_bits = 20);

}  // namespace digitsum
