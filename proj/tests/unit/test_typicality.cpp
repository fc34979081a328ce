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

#include "brudno/error.hpp"
#include "brudno/typicality.hpp"
#include "doctest.h"

using namespace brudno;
using linalg::Matrix;

namespace {
Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

double binom(unsigned n, unsigned k) { return std::tgamma(n + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(n - k + 1.0)); }
}  // namespace

TEST_CASE("set A of a diagonal product matches the binomial condition") {
  const double p = 0.3;
  const auto st = ChainState::iid_product(diag2(1 - p, p));
  const UniversalSemiDensity mu({{st, 0.5}}, 0.5);
  const unsigned n = 10;
  const double eps = 0.1;
  const double s = st.closed_form_entropy_rate();
  const auto rho = local_density(st, n);
  const auto m = mu.realize(n);
  const auto sets = typical_index_sets(rho.spectrum().values, m.spectrum.values, n, s, eps);

  double want = 0;
  for (unsigned k = 0; k <= n; ++k) {
    const double r = std::pow(1 - p, n - k) * std::pow(p, k);
    if (r >= std::exp2(-(n * (s + eps))) && r <= std::exp2(-(n * (s - eps)))) want += binom(n, k);
  }
  CHECK(sets.a.size() == static_cast<std::size_t>(want));

  const auto red = classical_reduction(st, n, eps);
  CHECK(red.equal);
  CHECK(red.quantum_count == sets.a.size());
}

TEST_CASE("typical projector is an orthogonal projection") {
  const auto st = ChainState::iid_product((Matrix(2, 2) << 0.7, 0.2, 0.2, 0.3).finished());
  const UniversalSemiDensity mu({{st, 0.25}}, 0.75);
  const unsigned n = 8;
  const auto rho = local_density(st, n);
  const auto m = mu.realize(n);
  const auto sets = typical_index_sets(rho.spectrum().values, m.spectrum.values, n, st.closed_form_entropy_rate(), 0.15);
  const auto p = typical_projector(rho, sets);
  REQUIRE_FALSE(p.degenerate());
  const Matrix pm = p.matrix();
  CHECK(linalg::max_abs_diff(pm * pm, pm) < 1e-10);
  CHECK(linalg::hermiticity_error(pm) < 1e-12);
  CHECK(pm.trace().real() == doctest::Approx(static_cast<double>(p.dim())));
  // p commutes with rho
  CHECK(linalg::max_abs_diff(pm * rho.matrix(), rho.matrix() * pm) < 1e-10);

  const auto v = sample_minimal_projection(p, 5);
  CHECK(v.psi.norm() == doctest::Approx(1.0));
  CHECK((pm * v.psi - v.psi).norm() < 1e-10);
  CHECK(linalg::max_abs_diff(sample_minimal_projection(p, 5).psi, v.psi) == 0.0);
}

TEST_CASE("maximally mixed state") {
  const auto st = ChainState::iid_product(Matrix::Identity(2, 2) * 0.5);
  const UniversalSemiDensity mu({{st, 0.5}}, 0.5);
  const unsigned n = 6;
  const auto rep = verify_quantum_brudno(st, mu, n, 0.1);
  CHECK(rep.s == doctest::Approx(1.0));
  CHECK(rep.a_count == 64);
  CHECK(rep.b_complement == 0);
  CHECK(rep.alpha_vacuous);
  CHECK(rep.item1.measured == doctest::Approx(1.0));
  CHECK(rep.item1.pass);
  CHECK(rep.item2.dim == 64);
  CHECK(rep.item2.pass);
  CHECK(rep.item3.pass);
  REQUIRE(rep.item4.has_value());
  CHECK(rep.item4->pass);
  // <psi|mu|psi> = 2^-n for every unit psi
  CHECK(rep.item4->min_value == doctest::Approx(1.0));
  CHECK(rep.item4->max_value == doctest::Approx(1.0));
}

TEST_CASE("typicality input checks") {
  const auto st = ChainState::iid_product(diag2(0.9, 0.1));
  const UniversalSemiDensity mu({{st, 0.5}}, 0.5);
  CHECK(member_weight(mu, st) == doctest::Approx(0.5));
  CHECK_FALSE(member_weight(mu, ChainState::iid_product(diag2(0.8, 0.2))).has_value());
  const UniversalSemiDensity other({{ChainState::iid_product(diag2(0.8, 0.2)), 0.5}}, 0.5);
  CHECK_THROWS_AS(verify_quantum_brudno(st, other, 4, 0.1), Error);
  CHECK_NOTHROW(verify_items_1_2_3(st, other, 4, 0.1));
  const UniversalSemiDensity tracial({}, 1.0);
  CHECK_THROWS_AS(verify_quantum_brudno(ChainState::iid_product(diag2(1.0, 0.0)), tracial, 4, 0.1), Error);
}

TEST_CASE("item 4 slack") {
  const auto st = ChainState::iid_product(diag2(0.9, 0.1));
  const UniversalSemiDensity mu({{st, 0.5}}, 0.5);
  QuantumCheckOptions opt;
  opt.samples = 50;
  const auto reps = verify_item_4(st, mu, {8, 10}, 0.1, opt);
  REQUIRE(reps.size() == 2);
  for (const auto& r : reps) {
    REQUIRE(r.item4.has_value());
    CHECK(r.item4->slack == doctest::Approx((r.item4->alpha_plus + 1.0) / r.n));
    CHECK(r.item4->band_lower <= r.item4->min_value);
    CHECK(r.item4->max_value <= r.item4->band_upper);
  }
}
