#include "doctest.h"

#include <stdexcept>

#include "digitsum/digits.hpp"

using namespace digitsum;

TEST_CASE("sum_of_digits") {
  CHECK(sum_of_digits(0) == 0);
  CHECK(sum_of_digits(7) == 3);
  for (unsigned k = 0; k < 64; ++k) CHECK(sum_of_digits(uint64_t{1} << k) == 1);
}

TEST_CASE("nu2") {
  CHECK(nu2(24) == 3);
  CHECK(nu2(1) == 0);
  CHECK(nu2(1024) == 10);
  CHECK_THROWS_AS(nu2(0), std::domain_error);
}

TEST_CASE("nu2_pochhammer") {
  CHECK(nu2_pochhammer(2, 3) == 3);
  CHECK(nu2_pochhammer(9, 0) == 0);
  CHECK(nu2_pochhammer(1, 4) == 3);
}

TEST_CASE("nu2_binomial") {
  for (auto m : {BinomialMethod::legendre, BinomialMethod::kummer}) {
    CHECK(nu2_binomial(1, 3, m) == 2);
    CHECK(nu2_binomial(0, 17, m) == 0);
    CHECK(nu2_binomial(1, 1, m) == 1);
  }
}

TEST_CASE("reverse_binary") {
  CHECK(reverse_binary(11) == 13);
  CHECK(reverse_binary(uint64_t{1} << 20) == 1);
  CHECK(reverse_binary(parse_binary("111101111011110111101111011111")) == parse_binary("111110111101111011110111101111"));
  CHECK_THROWS(reverse_binary(0));
}

TEST_CASE("block_count with zero padding") {
  CHECK(block_count(3, BitWord("01")) == 1);
  CHECK(block_count(3, BitWord("011")) == 1);
  CHECK(block_count(3, BitWord("001")) == 1);
  CHECK(block_count(5, BitWord("1")) == 2);
  CHECK(block_count(10, BitWord("10")) == 2);
  CHECK(block_count(0, BitWord("1")) == 0);
  CHECK_THROWS_AS(block_count(5, BitWord("00")), std::invalid_argument);
}

TEST_CASE("BitWord and binary strings") {
  CHECK(BitWord("0110").size() == 4);
  CHECK(BitWord("0110").to_string() == "0110");
  CHECK_THROWS_AS(BitWord(""), std::invalid_argument);
  CHECK_THROWS_AS(BitWord("012"), std::invalid_argument);
  CHECK(to_binary(0) == "0");
  CHECK(to_binary(10) == "1010");
  CHECK(parse_binary("1010") == 10);
  CHECK_THROWS_AS(parse_binary("10a"), std::invalid_argument);
  CHECK(bit_length_minus_one(1) == 0);
  CHECK(bit_length_minus_one(1023) == 9);
}
