// Copyright 2026 The brudno Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>
#include <set>

#include "brudno/error.hpp"
#include "brudno/godel.hpp"
#include "doctest.h"

using namespace brudno;
using namespace brudno::godel;

namespace {
SymbolString bits(const char* s) { return SymbolString::parse(s); }
}  // namespace

TEST_CASE("string index examples") {
  CHECK(string_to_index(bits("")) == 0);
  CHECK(string_to_index(bits("0")) == 1);
  CHECK(string_to_index(bits("1")) == 2);
  CHECK(string_to_index(bits("10")) == 5);
  CHECK(index_to_string(0) == bits(""));
  CHECK(index_to_string(3) == bits("00"));
  CHECK(index_to_string(6) == bits("11"));
}

TEST_CASE("string index is a bijection up to length 16") {
  std::uint64_t expected = 0;
  for (unsigned len = 0; len <= 16; ++len)
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << len); ++code, ++expected) {
      const SymbolString s = word_from_code(code, len, 2);
      REQUIRE(string_to_index(s) == expected);
      REQUIRE(index_to_string(expected) == s);
    }
}

TEST_CASE("string index rejects non-binary and overlong strings") {
  CHECK_THROWS_AS(string_to_index(SymbolString::parse("012", 3)), Error);
  SymbolString long_string;
  for (int i = 0; i < 64; ++i) long_string.push_back(1);
  CHECK_THROWS_AS(string_to_index(long_string), Error);
}

TEST_CASE("pairing examples and exhaustive round trip") {
  CHECK(pair(0, 0) == 0);
  CHECK(pair(2, 1) == 11);
  CHECK(pair(0, 11) == 22);
  for (std::uint64_t n = 0; n < (1u << 16); ++n) {
    const auto [p, q] = unpair(Natural(n));
    REQUIRE(pair(p, q) == n);
  }
  const Natural big = Natural(1) << 300;
  const auto [p, q] = unpair(pair(300, big + 7));
  CHECK(p == 300);
  CHECK(q == big + 7);
  CHECK_THROWS_AS(pair(big, 0), Error);  // exponent beyond 2^24
}

TEST_CASE("sign-tagged integer code") {
  CHECK(int_to_nat(2) == 22);
  CHECK(int_to_nat(-1) == 21);
  CHECK(int_to_nat(0) == 0);
  CHECK(int_to_nat(1) == 10);
  CHECK(int_to_nat(-2) == 45);
  std::set<Natural> seen;
  for (int z = -2000; z <= 2000; ++z) {
    const Natural c = int_to_nat(z);
    REQUIRE(nat_to_int(c) == Integer(z));
    seen.insert(c);
  }
  CHECK(seen.size() == 4001);
  CHECK_FALSE(nat_to_int(1).has_value());  // outside the range of f
}

TEST_CASE("primes") {
  CHECK(prime(0) == 2);
  CHECK(prime(1) == 3);
  CHECK(prime(4) == 11);
  CHECK(prime(99) == 541);
}

TEST_CASE("algebraic number encoding") {
  const AlgebraicNumberSpec a{{2, 0, -1}, 1};
  CHECK(encode_algebraic(a).prime_exponents == std::vector<Natural>{2, 22, 0, 21, 1});
  CHECK(evaluate_root(a).real() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(evaluate_root({{2, 0, -1}, 0}).real() == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-12));

  // z = 0 as the root of z: (1, f(1), f(0), 0) with the trailing zero trimmed
  const AlgebraicNumberSpec zero{{1, 0}, 0};
  CHECK(encode_algebraic(zero).prime_exponents == std::vector<Natural>{1, 10});
  CHECK(decode_algebraic(encode_algebraic(zero)) == zero);

  CHECK_THROWS_AS(encode_algebraic({{0, 0}, 0}), Error);
  CHECK_THROWS_AS(encode_algebraic({{3}, 0}), Error);
  CHECK_THROWS_AS(encode_algebraic({{1, 2}, 1}), Error);

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> deg(1, 4), coef(-30, 30);
  for (int k = 0; k < 100; ++k) {
    AlgebraicNumberSpec s;
    const int d = deg(rng);
    for (int i = 0; i <= d; ++i) s.coefficients.push_back(coef(rng));
    if (s.coefficients[0] == 0) s.coefficients[0] = 1;
    s.root_index = static_cast<std::uint64_t>(k % d);
    REQUIRE(decode_algebraic(encode_algebraic(s)) == s);
  }
}

TEST_CASE("materialize respects the bit budget") {
  const auto v = ExponentVector::trimmed({2, 22, 0, 21, 1});
  const auto n = materialize(v, 4096);
  REQUIRE(n.has_value());
  Natural want = Natural(4) * pow(Natural(3), 22) * pow(Natural(7), 21) * 11;
  CHECK(*n == want);
  CHECK_FALSE(materialize(v, 40).has_value());
  CHECK(ExponentVector::trimmed({1, 0, 0}).prime_exponents == std::vector<Natural>{1});
}

TEST_CASE("elementary vectors") {
  const EncodedElementaryVector zero = encode_elementary_vector({});
  CHECK(zero.code.top_index == 0);
  CHECK(zero.code.coefficient_codes.empty());
  REQUIRE(zero.value.has_value());
  CHECK(*zero.value == 1);

  const AlgebraicNumberSpec plus{{2, 0, -1}, 1};
  const AlgebraicNumberSpec minus{{2, 0, -1}, 0};
  const ElementaryVector bell = {{bits("00"), plus}, {bits("11"), minus}};
  const auto enc = encode_elementary_vector(bell);
  CHECK(enc.code.top_index == 6);
  REQUIRE(enc.code.coefficient_codes.size() == 7);
  CHECK(enc.code.coefficient_codes[3]->prime_exponents == std::vector<Natural>{2, 22, 0, 21, 1});
  CHECK(enc.code.coefficient_codes[6]->prime_exponents == std::vector<Natural>{2, 22, 0, 21});
  CHECK_FALSE(enc.code.coefficient_codes[0].has_value());
  CHECK_FALSE(enc.value.has_value());  // far beyond the default budget
  CHECK(decode_elementary_vector(enc.code) == bell);

  std::mt19937_64 rng(9);
  for (int k = 0; k < 100; ++k) {
    ElementaryVector psi;
    const int terms = 1 + k % 5;
    for (int t = 0; t < terms; ++t) {
      const unsigned len = static_cast<unsigned>(rng() % 4);
      const std::uint64_t code = len == 0 ? 0 : rng() % (1u << len);
      psi[word_from_code(code, len, 2)] = {{1, static_cast<std::int64_t>(rng() % 21) - 10}, 0};
    }
    REQUIRE(decode_elementary_vector(encode_elementary_vector(psi).code) == psi);
  }
}
