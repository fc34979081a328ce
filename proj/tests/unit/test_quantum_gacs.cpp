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
#include <random>

#include "brudno/error.hpp"
#include "brudno/quantum_gacs.hpp"
#include "doctest.h"

using namespace brudno;
using linalg::Matrix;

namespace {
Matrix diag(std::initializer_list<double> v) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) m(i, i) = x, ++i;
  return m;
}
}  // namespace

TEST_CASE("semi-density validation") {
  CHECK_NOTHROW(SemiDensityMatrix(1, diag({0.5, 0.25})));
  CHECK_THROWS_AS(SemiDensityMatrix(1, diag({0.75, 0.5})), Error);
  CHECK_THROWS_AS(SemiDensityMatrix(1, diag({0.5, -0.1})), Error);
}

TEST_CASE("quasi-order") {
  const Matrix t1 = diag({0.5, 0.25});
  const Matrix e = embed(t1, 1, 2);
  CHECK(e.rows() == 4);
  CHECK(e(0, 0).real() == 0.5);
  CHECK(e(2, 2).real() == 0.25);
  CHECK(e(1, 1).real() == 0.0);
  CHECK(linalg::max_abs_diff(compress(e, 1, 2), t1) == 0.0);

  CHECK(quasi_greater(t1, 1, e, 2));
  CHECK(quasi_greater(t1, 1, e + Matrix::Identity(4, 4) * 0.05, 2));
  CHECK_FALSE(quasi_greater(t1, 1, e * 0.5, 2));
  CHECK(quasi_margin(t1, 1, e * 0.5, 2) == doctest::Approx(-0.25));

  const std::vector<SemiDensityMatrix> up = {SemiDensityMatrix(1, t1), SemiDensityMatrix(2, e + diag({0, 0.1, 0, 0})),
                                             SemiDensityMatrix(3, embed(e + diag({0, 0.1, 0, 0}), 2, 3))};
  const auto lim = limit_of_quasi_increasing(up);
  CHECK(lim.sites == 3);
  CHECK(lim.traces.back() == doctest::Approx(0.85));
  const std::vector<SemiDensityMatrix> down = {SemiDensityMatrix(1, t1), SemiDensityMatrix(2, e * 0.5)};
  CHECK_THROWS_AS(limit_of_quasi_increasing(down), Error);
}

TEST_CASE("universal semi-density") {
  const auto st = ChainState::iid_product(diag({0.7, 0.3}));
  const UniversalSemiDensity mu({{st, 0.5}}, 0.5);
  const auto r1 = mu.realize(1);
  CHECK(linalg::max_abs_diff(r1.matrix, diag({0.6, 0.4})) < 1e-15);
  const auto r4 = mu.realize(4);
  CHECK(r4.trace() == doctest::Approx(1.0));
  CHECK(dominance_margin(r4.matrix, local_density(st, 4).matrix(), 0.5) >= -1e-12);
  CHECK(dominance_margin(r4.matrix, local_density(st, 4).matrix(), 0.9) < 0);

  CHECK_THROWS_AS(UniversalSemiDensity({{st, 0.8}}, 0.5), Error);
  CHECK_THROWS_AS(UniversalSemiDensity({{st, 0.0}}, 0.5), Error);
  const UniversalSemiDensity singular({{ChainState::iid_product(diag({1.0, 0.0})), 0.5}}, 0.0);
  CHECK_THROWS_AS(singular.realize(2), Error);
}

TEST_CASE("Gacs complexities") {
  const Matrix mu = diag({0.5, 0.25, 0.125, 0.0625});
  const Matrix rho = Matrix::Identity(4, 4) * 0.25;
  const auto sd = linalg::canonical_spectrum(mu);
  CHECK(gacs_upper(rho, sd) == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(gacs_lower(rho, mu) == doctest::Approx(-std::log2(15.0 / 64.0)).epsilon(1e-12));
  CHECK(gacs_lower(rho, mu) == doctest::Approx(2.0931).epsilon(1e-4));

  // halving mu adds one bit to both
  CHECK(gacs_upper(rho, linalg::canonical_spectrum(mu * 0.5)) == doctest::Approx(3.5).epsilon(1e-12));
  CHECK(gacs_lower(rho, mu * 0.5) == doctest::Approx(gacs_lower(rho, mu) + 1).epsilon(1e-12));

  CHECK_THROWS_AS(gacs_upper(rho, linalg::canonical_spectrum(diag({0.5, 0.5, 0.0, 0.0}))), Error);

  std::mt19937_64 rng(2);
  for (int k = 0; k < 50; ++k) {
    const Matrix r = linalg::random_density(6, rng);
    const Matrix m = linalg::random_density(6, rng) * 0.6;
    CHECK(gacs_upper(r, linalg::canonical_spectrum(m)) >= gacs_lower(r, m) - 1e-10);
  }
}

TEST_CASE("spectral transport") {
  const auto rho = linalg::canonical_spectrum(diag({0.3, 0.7}));
  const auto mu = linalg::canonical_spectrum(diag({0.7, 0.3}));
  const Matrix u = spectral_transport_unitary(rho, mu);
  CHECK(linalg::max_abs_diff(u * u.adjoint(), Matrix::Identity(2, 2)) < 1e-14);
  // the swap, since the largest eigenvalues sit on opposite basis vectors
  CHECK(std::abs(u(0, 1)) == doctest::Approx(1.0));
  CHECK(std::abs(u(1, 0)) == doctest::Approx(1.0));
  CHECK(linalg::max_abs_diff(u * diag({0.7, 0.3}) * u.adjoint(), diag({0.3, 0.7})) < 1e-14);
  CHECK_THROWS_AS(spectral_transport_unitary(rho, linalg::canonical_spectrum(diag({1.0, 0.0}))), Error);

  std::mt19937_64 rng(12);
  const Matrix a = linalg::random_density(8, rng), b = linalg::random_density(8, rng);
  const Matrix v = spectral_transport_unitary(linalg::canonical_spectrum(a), linalg::canonical_spectrum(b));
  CHECK(linalg::max_abs_diff(v * v.adjoint(), Matrix::Identity(8, 8)) < 1e-10);
  // U mu U^dag commutes with rho
  const Matrix t = v * b * v.adjoint();
  CHECK(linalg::max_abs_diff(t * a, a * t) < 1e-10);
}
