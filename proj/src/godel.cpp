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

#include "brudno/godel.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include <Eigen/Dense>
#include <fmt/core.h>

#include "brudno/error.hpp"

namespace brudno::godel {
namespace {

constexpr double kRootTie = 1e-9;

constexpr std::size_t kMaxShift = std::size_t{1} << 24;
constexpr std::size_t kMaxSlots = std::size_t{1} << 24;

std::size_t to_size(const Natural& n, std::size_t limit, const char* what) {
  if (n > limit) throw Error(ErrorKind::ResourceLimit, fmt::format("{} exceeds {}", what, limit));
  return n.convert_to<std::size_t>();
}

}  // namespace

std::uint64_t string_to_index(const SymbolString& s) {
  if (s.alphabet_size() != 2) throw Error(ErrorKind::InvalidInput, "string index needs a binary alphabet");
  if (s.size() > 63) throw Error(ErrorKind::InvalidInput, "string longer than 63 symbols");
  return (std::uint64_t{1} << s.size()) + word_code(s) - 1;
}

SymbolString index_to_string(std::uint64_t index) {
  if (index == ~std::uint64_t{0}) throw Error(ErrorKind::InvalidInput, "index maps to a string longer than 63");
  const std::uint64_t m = index + 1;
  const std::size_t length = 63 - static_cast<std::size_t>(__builtin_clzll(m));
  return word_from_code(m - (std::uint64_t{1} << length), length, 2);
}

Natural pair(const Natural& p, const Natural& q) {
  if (p < 0 || q < 0) throw Error(ErrorKind::InvalidInput, "pair arguments must be non-negative");
  const std::size_t shift = to_size(p, kMaxShift, "pair exponent");
  return ((2 * q + 1) << shift) - 1;
}

std::pair<Natural, Natural> unpair(const Natural& n) {
  if (n < 0) throw Error(ErrorKind::InvalidInput, "unpair argument must be non-negative");
  const Natural m = n + 1;
  const std::size_t p = boost::multiprecision::lsb(m);
  return {Natural(p), ((m >> p) - 1) / 2};
}

Natural int_to_nat(const Integer& z) {
  if (z == 0) return 0;
  const Natural sign = z < 0 ? 1 : 0;
  return pair(sign, pair(boost::multiprecision::abs(z), 1));
}

std::optional<Integer> nat_to_int(const Natural& n) {
  if (n < 0) return std::nullopt;
  if (n == 0) return Integer(0);
  auto [sign, inner] = unpair(n);
  if (sign > 1) return std::nullopt;
  auto [magnitude, denominator] = unpair(inner);
  if (denominator != 1 || magnitude == 0) return std::nullopt;
  return sign == 1 ? Integer(-magnitude) : Integer(magnitude);
}

std::uint64_t prime(std::size_t j) {
  static std::mutex mu;
  static std::vector<std::uint64_t> primes{2, 3, 5, 7, 11, 13};
  std::lock_guard lock(mu);
  for (std::uint64_t c = primes.back() + 2; primes.size() <= j; c += 2) {
    bool is_prime = true;
    for (std::uint64_t p : primes) {
      if (p * p > c) break;
      if (c % p == 0) {
        is_prime = false;
        break;
      }
    }
    if (is_prime) primes.push_back(c);
  }
  return primes[j];
}

ExponentVector ExponentVector::trimmed(std::vector<Natural> exponents) {
  while (!exponents.empty() && exponents.back() == 0) exponents.pop_back();
  return ExponentVector{std::move(exponents)};
}

std::optional<Natural> materialize(const ExponentVector& v, std::size_t max_bits) {
  double bits = 0.0;
  for (std::size_t j = 0; j < v.prime_exponents.size(); ++j) {
    const Natural& e = v.prime_exponents[j];
    if (e > max_bits) return std::nullopt;
    bits += e.convert_to<double>() * std::log2(static_cast<double>(prime(j)));
    if (bits > static_cast<double>(max_bits)) return std::nullopt;
  }
  Natural out = 1;
  for (std::size_t j = 0; j < v.prime_exponents.size(); ++j)
    out *= boost::multiprecision::pow(Natural(prime(j)), v.prime_exponents[j].convert_to<unsigned>());
  return out;
}

void validate(const AlgebraicNumberSpec& a) {
  if (std::all_of(a.coefficients.begin(), a.coefficients.end(), [](std::int64_t x) { return x == 0; }))
    throw Error(ErrorKind::InvalidInput, "zero polynomial");
  if (a.degree() < 1) throw Error(ErrorKind::InvalidInput, "constant polynomial has no roots");
  if (a.root_index >= a.degree())
    throw Error(ErrorKind::InvalidInput,
                fmt::format("root index {} not below degree {}", a.root_index, a.degree()));
}

ExponentVector encode_algebraic(const AlgebraicNumberSpec& a) {
  validate(a);
  std::vector<Natural> e;
  e.reserve(a.coefficients.size() + 2);
  e.emplace_back(a.degree());
  for (std::int64_t x : a.coefficients) e.push_back(int_to_nat(Integer(x)));
  e.emplace_back(a.root_index);
  return ExponentVector::trimmed(std::move(e));
}

AlgebraicNumberSpec decode_algebraic(const ExponentVector& v) {
  const auto& e = v.prime_exponents;
  auto at = [&](std::size_t j) -> Natural { return j < e.size() ? e[j] : Natural(0); };
  const std::size_t n = to_size(at(0), kMaxSlots, "polynomial degree");
  if (n < 1) throw Error(ErrorKind::InvalidInput, "exponent vector does not encode a polynomial root");
  if (e.size() > n + 3) throw Error(ErrorKind::InvalidInput, "exponent vector longer than its degree allows");
  AlgebraicNumberSpec a;
  a.coefficients.reserve(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    auto z = nat_to_int(at(j + 1));
    if (!z) throw Error(ErrorKind::InvalidInput, fmt::format("exponent slot {} is not an integer code", j + 1));
    if (*z > std::numeric_limits<std::int64_t>::max() || *z < std::numeric_limits<std::int64_t>::min())
      throw Error(ErrorKind::ResourceLimit, "coefficient does not fit 64 bits");
    a.coefficients.push_back(z->convert_to<std::int64_t>());
  }
  const Natural root = at(n + 2);
  if (root > std::numeric_limits<std::uint64_t>::max()) throw Error(ErrorKind::InvalidInput, "root index too large");
  a.root_index = root.convert_to<std::uint64_t>();
  validate(a);
  return a;
}

std::complex<double> evaluate_root(const AlgebraicNumberSpec& a) {
  validate(a);
  if (a.degree() > 4) throw Error(ErrorKind::Unsupported, "root evaluation limited to degree <= 4");
  std::size_t lead = 0;
  while (a.coefficients[lead] == 0) ++lead;
  const std::size_t d = a.coefficients.size() - 1 - lead;
  if (a.root_index >= d) throw Error(ErrorKind::InvalidInput, "root index beyond the effective degree");
  std::vector<std::complex<double>> roots;
  const double x0 = static_cast<double>(a.coefficients[lead]);
  if (d == 1) {
    roots.emplace_back(-static_cast<double>(a.coefficients[lead + 1]) / x0);
  } else {
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t j = 0; j < d; ++j)
      companion(0, static_cast<Eigen::Index>(j)) = -static_cast<double>(a.coefficients[lead + 1 + j]) / x0;
    for (std::size_t j = 1; j < d; ++j) companion(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j - 1)) = 1.0;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    for (Eigen::Index j = 0; j < solver.eigenvalues().size(); ++j) roots.push_back(solver.eigenvalues()[j]);
  }
  std::sort(roots.begin(), roots.end(), [](const auto& x, const auto& y) {
    if (std::abs(x.real() - y.real()) > kRootTie) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return roots[a.root_index];
}

EncodedElementaryVector encode_elementary_vector(const ElementaryVector& psi, std::size_t max_bits) {
  EncodedElementaryVector out;
  std::uint64_t top = 0;
  for (const auto& [basis, coefficient] : psi) top = std::max(top, string_to_index(basis));
  out.code.top_index = top;
  if (!psi.empty()) {
    if (top >= kMaxSlots) throw Error(ErrorKind::ResourceLimit, "basis index too large for an elementary code");
    out.code.coefficient_codes.resize(top + 1);
    for (const auto& [basis, coefficient] : psi)
      out.code.coefficient_codes[string_to_index(basis)] = encode_algebraic(coefficient);
  }

  // W(psi) = 2^top * prod p_{j+1}^{w(a_j)}
  double bits = static_cast<double>(top);
  std::vector<Natural> inner(out.code.coefficient_codes.size());
  bool fits = bits <= static_cast<double>(max_bits);
  for (std::size_t j = 0; fits && j < inner.size(); ++j) {
    const auto& slot = out.code.coefficient_codes[j];
    if (!slot) continue;
    auto w = materialize(*slot, max_bits);
    if (!w || *w > max_bits) {
      fits = false;
      break;
    }
    inner[j] = *w;
    bits += w->convert_to<double>() * std::log2(static_cast<double>(prime(j + 1)));
    fits = bits <= static_cast<double>(max_bits);
  }
  if (fits) {
    Natural value = Natural(1) << static_cast<std::size_t>(top);
    for (std::size_t j = 0; j < inner.size(); ++j)
      if (inner[j] != 0) value *= boost::multiprecision::pow(Natural(prime(j + 1)), inner[j].convert_to<unsigned>());
    out.value = std::move(value);
    out.symbolic_only = false;
  }
  return out;
}

ElementaryVector decode_elementary_vector(const ElementaryCode& code) {
  ElementaryVector psi;
  const auto& slots = code.coefficient_codes;
  if (slots.empty()) {
    if (code.top_index != 0) throw Error(ErrorKind::InvalidInput, "nonzero top index without coefficients");
    return psi;
  }
  if (code.top_index + 1 != slots.size() || !slots.back())
    throw Error(ErrorKind::InvalidInput, "top index does not match the last nonzero coefficient");
  for (std::size_t j = 0; j < slots.size(); ++j)
    if (slots[j]) psi.emplace(index_to_string(j), decode_algebraic(*slots[j]));
  return psi;
}

}  // namespace brudno::godel
