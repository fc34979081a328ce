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

#pragma once

// Computable encodings of strings, integers, algebraic numbers and
// elementary state vectors as natural numbers.
//
// Gödel numbers built from prime powers grow past any fixed-width integer
// almost immediately, so they are carried as exponent vectors and only
// turned into big integers on request, under an explicit bit budget.

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "brudno/symbols.hpp"

namespace brudno::godel {

using Natural = boost::multiprecision::cpp_int;
using Integer = boost::multiprecision::cpp_int;

// Length-lexicographic index of a binary string: "" -> 0, "0" -> 1, "1" -> 2,
// "00" -> 3, ... i.e. 2^|s| + value(s) - 1. Strings longer than 63 symbols
// are rejected.
std::uint64_t string_to_index(const SymbolString& s);
SymbolString index_to_string(std::uint64_t index);

// <p, q> = 2^p (2q + 1) - 1, a bijection N x N -> N.
Natural pair(const Natural& p, const Natural& q);
std::pair<Natural, Natural> unpair(const Natural& n);

// Sign-tagged integer code: 0 -> <0,<0,0>> = 0, z > 0 -> <0,<z,1>>,
// z < 0 -> <1,<|z|,1>>. Injective; nat_to_int is defined exactly on its range.
Natural int_to_nat(const Integer& z);
std::optional<Integer> nat_to_int(const Natural& n);

// j-th prime, 0-based (prime(0) == 2).
std::uint64_t prime(std::size_t j);

// Exponents of 2, 3, 5, ... with trailing zeros trimmed.
struct ExponentVector {
  std::vector<Natural> prime_exponents;

  static ExponentVector trimmed(std::vector<Natural> exponents);
  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;
};

// The number's bit length is estimated first; nullopt when above max_bits.
std::optional<Natural> materialize(const ExponentVector& v, std::size_t max_bits);

// A root of x_0 z^n + x_1 z^{n-1} + ... + x_n, picked by its position in the
// (real part, imaginary part) lexicographic order of all roots.
struct AlgebraicNumberSpec {
  std::vector<std::int64_t> coefficients;
  std::uint64_t root_index = 0;

  std::size_t degree() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }
  friend bool operator==(const AlgebraicNumberSpec&, const AlgebraicNumberSpec&) = default;
};

void validate(const AlgebraicNumberSpec& a);

// w(z_i) = 2^n 3^{f(x_0)} ... p_{n+2}^{f(x_n)} p_{n+3}^{i}
ExponentVector encode_algebraic(const AlgebraicNumberSpec& a);
AlgebraicNumberSpec decode_algebraic(const ExponentVector& v);

// Numerical value via the companion matrix; degree <= 4 only.
std::complex<double> evaluate_root(const AlgebraicNumberSpec& a);

// Finitely supported vector over binary basis strings (all lengths), with
// algebraic coefficients. Missing keys are zero coefficients.
using ElementaryVector = std::map<SymbolString, AlgebraicNumberSpec>;

// W(psi) = 2^n prod_{j=0..n} p_{j+1}^{w(a_j)}, where a_j is the coefficient
// of the basis string with index j and n the largest index carrying a
// nonzero coefficient. A zero coefficient contributes exponent 0.
struct ElementaryCode {
  Natural top_index;
  std::vector<std::optional<ExponentVector>> coefficient_codes;

  friend bool operator==(const ElementaryCode&, const ElementaryCode&) = default;
};

struct EncodedElementaryVector {
  ElementaryCode code;
  std::optional<Natural> value;  // set only when every part fits max_bits
  bool symbolic_only = true;
};

EncodedElementaryVector encode_elementary_vector(const ElementaryVector& psi, std::size_t max_bits = 4096);
ElementaryVector decode_elementary_vector(const ElementaryCode& code);

}  // namespace brudno::godel
