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
#include "brudno/linalg.hpp"
#include "brudno/spin_chain.hpp"
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

double orthonormality_error(const Matrix& v) {
  return (v.adjoint() * v - Matrix::Identity(v.cols(), v.cols())).cwiseAbs().maxCoeff();
}
}  // namespace

TEST_CASE("canonical spectrum of random Hermitian matrices") {
  std::mt19937_64 rng(3);
  for (Eigen::Index d : {2, 5, 16, 64, 256}) {
    const Matrix rho = linalg::random_density(d, rng);
    const auto sd = linalg::canonical_spectrum(rho);
    CHECK(orthonormality_error(sd.vectors) < 1e-10);
    for (Eigen::Index i = 1; i < d; ++i) CHECK(sd.values(i) <= sd.values(i - 1));
    const Matrix back = sd.vectors * sd.values.cast<std::complex<double>>().asDiagonal() * sd.vectors.adjoint();
    CHECK(linalg::max_abs_diff(back, rho) < 1e-10);
    CHECK(sd.values.sum() == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("canonical form depends only on the eigenspaces") {
  // degenerate spectrum: a random rotation inside the eigenspace gives the same vectors
  const Matrix m = linalg::kron(diag2(0.9, 0.1), diag2(0.9, 0.1));
  const auto a = linalg::canonical_spectrum(m);
  std::mt19937_64 rng(8);
  Matrix v = Matrix::Identity(4, 4);
  const auto u = linalg::random_unit_vector(2, rng);
  v(1, 1) = u(0);
  v(2, 1) = u(1);
  v(1, 2) = -std::conj(u(1));
  v(2, 2) = std::conj(u(0));
  linalg::RealVector vals(4);
  vals << 0.81, 0.09, 0.09, 0.01;
  const auto b = linalg::canonicalize(vals, v);
  CHECK(linalg::max_abs_diff(a.vectors, b.vectors) < 1e-12);
  CHECK((a.values - b.values).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("kron and partial traces") {
  const Matrix p = linalg::kron(diag2(0.9, 0.1), diag2(0.9, 0.1));
  CHECK(p(0, 0).real() == doctest::Approx(0.81));
  CHECK(p(1, 1).real() == doctest::Approx(0.09));
  CHECK(p(2, 2).real() == doctest::Approx(0.09));
  CHECK(p(3, 3).real() == doctest::Approx(0.01));

  Matrix bell = Matrix::Zero(4, 4);
  bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
  CHECK(linalg::max_abs_diff(linalg::trace_out_first(bell), Matrix::Identity(2, 2) * 0.5) < 1e-15);
  CHECK(linalg::max_abs_diff(linalg::trace_out_last(bell), Matrix::Identity(2, 2) * 0.5) < 1e-15);

  std::mt19937_64 rng(4);
  const Matrix a = linalg::random_density(2, rng), b = linalg::random_density(4, rng);
  CHECK(linalg::max_abs_diff(linalg::trace_out_first(linalg::kron(a, b)), b) < 1e-14);
  CHECK(linalg::max_abs_diff(linalg::trace_out_last(linalg::kron(a, b), 2), a) < 1e-14);
}

TEST_CASE("random densities") {
  std::mt19937_64 rng(1);
  const Matrix r = linalg::random_density(8, rng, 2);
  CHECK(linalg::hermiticity_error(r) < 1e-14);
  CHECK(r.trace().real() == doctest::Approx(1.0));
  const auto ev = linalg::eigenvalues(r);
  CHECK(ev(1) > 1e-6);
  CHECK(std::abs(ev(2)) < 1e-12);
  CHECK(linalg::random_unit_vector(16, rng).norm() == doctest::Approx(1.0));
}

TEST_CASE("local densities of product states") {
  const auto st = ChainState::iid_product(diag2(0.9, 0.1));
  CHECK(st.faithful());
  CHECK(st.closed_form_entropy_rate() == doctest::Approx(0.46900).epsilon(1e-5));
  const auto rho2 = local_density(st, 2);
  CHECK(linalg::max_abs_diff(rho2.matrix(), linalg::kron(diag2(0.9, 0.1), diag2(0.9, 0.1))) < 1e-15);
  const auto& sd = rho2.spectrum();
  CHECK(sd.values(0) == doctest::Approx(0.81));
  CHECK(sd.values(1) == doctest::Approx(0.09));
  CHECK(sd.values(2) == doctest::Approx(0.09));
  CHECK(sd.values(3) == doctest::Approx(0.01));
  CHECK(von_neumann_entropy(local_density(st, 8)) == doctest::Approx(8 * 0.4689955935892812).epsilon(1e-12));
  CHECK(linalg::max_abs_diff(partial_trace(local_density(st, 3), TraceEnd::First).matrix(), rho2.matrix()) < 1e-14);
  CHECK_THROWS_AS(local_density(st, 13), Error);

  CHECK_FALSE(ChainState::iid_product(diag2(1.0, 0.0)).faithful());
  CHECK_THROWS_AS(ChainState::iid_product(diag2(0.5, 0.6)), Error);
}

TEST_CASE("mixtures of products") {
  const auto st = ChainState::mixture_of_products({diag2(1.0, 0.0), diag2(0.0, 1.0)}, {0.5, 0.5});
  CHECK_FALSE(st.ergodic());
  CHECK(st.closed_form_entropy_rate() == doctest::Approx(0.0));
  // one bit at every length: the state is (|0..0><0..0| + |1..1><1..1|) / 2
  for (unsigned n : {1u, 2u, 5u}) CHECK(von_neumann_entropy(local_density(st, n)) == doctest::Approx(1.0));
  const auto rep = entropy_rate(st, 6);
  CHECK(rep.rate == doctest::Approx(1.0 / 6.0));
  CHECK_FALSE(rep.product);
}

TEST_CASE("entropy rate of a product is additive") {
  std::mt19937_64 rng(6);
  const auto st = ChainState::iid_product(linalg::random_density(2, rng));
  const auto rep = entropy_rate(st, 8);
  CHECK(rep.product);
  CHECK(rep.additive);
  CHECK(rep.rate == doctest::Approx(rep.closed_form).epsilon(1e-10));
}
