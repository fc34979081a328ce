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

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "brudno/kernels.hpp"
#include "doctest.h"

using namespace brudno::kernels;

namespace {

// Lengths around every vector width plus a long one, so each tail path runs.
const std::vector<std::size_t> kLengths = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 15, 16, 17, 31, 32, 33, 63, 64, 65, 1000, 1003};

std::vector<double> random_doubles(std::size_t n, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

std::vector<cplx> random_complex(std::size_t n, std::mt19937_64& rng) {
  auto re = random_doubles(n, rng);
  auto im = random_doubles(n, rng);
  std::vector<cplx> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = {re[i], im[i]};
  return v;
}

double rel(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

TEST_CASE("scalar kernels match direct loops") {
  const auto& s = scalar_table();
  std::mt19937_64 rng(3);
  for (std::size_t n : kLengths) {
    auto x = random_doubles(n, rng);
    auto y = random_doubles(n, rng);
    double dot = 0.0, diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dot += x[i] * y[i];
      diff = std::max(diff, std::abs(x[i] - y[i]));
    }
    CHECK(rel(s.dot(x, y), dot) < 1e-14);
    CHECK(s.max_abs_diff(x, y) == diff);
  }
  const std::vector<double> p = {0.5, 0.25, 0.25, 0.0};
  CHECK(s.entropy_bits(p) == doctest::Approx(1.5).epsilon(1e-15));
  const std::vector<double> v = {0.1, 0.2, 0.3, 0.4, 0.5};
  const auto rm = s.range_mass(v, 0.2, 0.4);
  CHECK(rm.count == 3);
  CHECK(rm.sum == doctest::Approx(0.9));
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
  const KernelTable* a = avx2_table();
  if (!a) {
    MESSAGE("no AVX2+FMA on this machine; equivalence test skipped");
    return;
  }
  const auto& s = scalar_table();
  std::mt19937_64 rng(11);
  for (std::size_t n : kLengths) {
    CAPTURE(n);
    auto x = random_doubles(n, rng);
    auto y = random_doubles(n, rng);
    CHECK(rel(a->dot(x, y), s.dot(x, y)) < 1e-13);
    CHECK(a->max_abs_diff(x, y) == s.max_abs_diff(x, y));

    auto ys = y, ya = y;
    s.axpy(0.37, x, ys);
    a->axpy(0.37, x, ya);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(ys[i] - ya[i]) <= 1e-15);

    auto cx = random_complex(n, rng);
    auto cy = random_complex(n, rng);
    const cplx cs = s.cdot(cx, cy), ca = a->cdot(cx, cy);
    CHECK(std::abs(cs - ca) <= 1e-13 * std::max(1.0, std::abs(cs)));
    auto cys = cy, cya = cy;
    s.caxpy({0.3, -0.7}, cx, cys);
    a->caxpy({0.3, -0.7}, cx, cya);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(cys[i] - cya[i]) <= 1e-15);

    auto p = random_doubles(n, rng, 0.0, 1.0);
    if (n > 2) {
      p[0] = 0.0;
      p[1] = 1e-310;  // subnormal
      p[2] = 1.0;
    }
    CHECK(rel(a->entropy_bits(p), s.entropy_bits(p)) < 1e-13);

    const auto rs = s.range_mass(p, 0.25, 0.75);
    const auto ra = a->range_mass(p, 0.25, 0.75);
    CHECK(rs.count == ra.count);
    CHECK(rel(rs.sum, ra.sum) < 1e-13);
  }
}

TEST_CASE("range_mass bounds are inclusive in both tables") {
  const std::vector<double> v = {0.25, 0.5, 0.75, 0.7500000000000001, 0.2499999999999999, 0.3, 0.6, 0.75, 0.25};
  for (const KernelTable* t : {&scalar_table(), avx2_table()}) {
    if (!t) continue;
    CAPTURE(t->name);
    const auto r = t->range_mass(v, 0.25, 0.75);
    CHECK(r.count == 7);
  }
}

TEST_CASE("active table is one of the two") {
  const auto& act = active();
  CHECK((&act == &scalar_table() || &act == avx2_table()));
}
