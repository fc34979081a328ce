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

// Dense Hermitian linear algebra on qubit-chain matrices. Site 0 is the most
// significant bit of a basis index.

#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace brudno::linalg {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

struct SpectralData {
  RealVector values;  // descending
  Matrix vectors;     // column i belongs to values(i)
};

// Eigenvalues only, descending.
RealVector eigenvalues(const Matrix& m);
double min_eigenvalue(const Matrix& m);

// Canonical spectral decomposition. Eigenvalues are sorted descending and
// grouped when adjacent values differ by at most
// max(1e-13 * |lambda_max|, 1e-10 * |lambda|); each group is set to its
// mean. Within a group the basis is obtained by Gram-Schmidt on the
// projections of e_0, e_1, ..., the first nonzero coefficient of each
// vector is made real positive and vectors are ordered by descending
// lexicographic (re, im). The result depends only on the eigenspaces.
SpectralData canonical_spectrum(const Matrix& m);
// Same canonical form for eigenpairs obtained elsewhere (columns of
// `vectors` orthonormal, any order).
SpectralData canonicalize(const RealVector& values, const Matrix& vectors);

bool is_diagonal(const Matrix& m);
bool is_real(const Matrix& m);
double hermiticity_error(const Matrix& m);  // max |M - M^dag|
double max_abs_diff(const Matrix& a, const Matrix& b);
double trace_norm_hermitian(const Matrix& m);

Matrix kron(const Matrix& a, const Matrix& b);
// Trace out `count` sites from the front / back of an n-site operator.
Matrix trace_out_first(const Matrix& m, unsigned count = 1);
Matrix trace_out_last(const Matrix& m, unsigned count = 1);

// <v_i| m |v_i> for every column of v.
RealVector diagonal_in_basis(const Matrix& m, const Matrix& v);

// Ginibre-distributed density matrix of the given rank (dim when 0).
Matrix random_density(Eigen::Index dim, std::mt19937_64& rng, Eigen::Index rank = 0);
// Haar-distributed unit vector.
Vector random_unit_vector(Eigen::Index dim, std::mt19937_64& rng);

}  // namespace brudno::linalg
