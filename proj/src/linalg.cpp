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

#include "brudno/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <fmt/core.h>

#include "brudno/error.hpp"
#include "brudno/kernels.hpp"

namespace brudno::linalg {
namespace {

using kernels::cplx;

constexpr double kGroupAbs = 1e-13;
constexpr double kGroupRel = 1e-10;
constexpr double kAcceptNorm = 1e-6;
constexpr double kPhaseTol = 1e-9;
constexpr double kLexTol = 1e-9;
constexpr double kPermTol = 1e-14;

void check_square(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) throw Error(ErrorKind::InvalidInput, "expected a non-empty square matrix");
}

// Unsorted eigenpairs straight from the solver. Real symmetric input takes
// the real solver, which is several times faster.
void solve(const Matrix& m, bool want_vectors, RealVector& values, Matrix& vectors) {
  check_square(m);
  const Eigen::Index d = m.rows();
  if (is_diagonal(m)) {
    values = m.diagonal().real();
    if (want_vectors) vectors = Matrix::Identity(d, d);
    return;
  }
  const int options = want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly;
  Eigen::ComputationInfo info;
  if (is_real(m)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.real(), options);
    info = es.info();
    if (info == Eigen::Success) {
      values = es.eigenvalues();
      if (want_vectors) vectors = es.eigenvectors().cast<cplx>();
    }
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, options);
    info = es.info();
    if (info == Eigen::Success) {
      values = es.eigenvalues();
      if (want_vectors) vectors = es.eigenvectors();
    }
  }
  if (info != Eigen::Success) throw Error(ErrorKind::InvalidInput, "Hermitian eigensolver did not converge");
}

std::vector<Eigen::Index> descending_order(const RealVector& values) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return values(a) > values(b); });
  return order;
}

void fix_phase(Eigen::Ref<Vector> v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > kPhaseTol) {
      v *= std::conj(v(i)) / a;
      v(i) = a;
      return;
    }
  }
}

// true when a sorts before b: descending lexicographic (re, im).
bool lex_greater(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (std::abs(a(i).real() - b(i).real()) > kLexTol) return a(i).real() > b(i).real();
    if (std::abs(a(i).imag() - b(i).imag()) > kLexTol) return a(i).imag() > b(i).imag();
  }
  return false;
}

// Each column a unit vector up to phase; returns the row index per column.
std::optional<std::vector<Eigen::Index>> permutation_rows(const Matrix& v) {
  std::vector<Eigen::Index> rows;
  rows.reserve(static_cast<std::size_t>(v.cols()));
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    Eigen::Index hit = -1;
    for (Eigen::Index r = 0; r < v.rows(); ++r) {
      if (std::abs(v(r, c)) > kPermTol) {
        if (hit >= 0) return std::nullopt;
        hit = r;
      }
    }
    if (hit < 0) return std::nullopt;
    rows.push_back(hit);
  }
  return rows;
}

Matrix canonical_group_basis(const Matrix& v) {
  const Eigen::Index d = v.rows();
  const Eigen::Index g = v.cols();
  if (auto rows = permutation_rows(v)) {
    std::sort(rows->begin(), rows->end());
    Matrix out = Matrix::Zero(d, g);
    for (Eigen::Index c = 0; c < g; ++c) out((*rows)[static_cast<std::size_t>(c)], c) = 1.0;
    return out;
  }
  // Coefficient space: row j of v, conjugated, is the coordinate vector of
  // P e_j in the basis v.
  Matrix q(g, g);
  Eigen::Index accepted = 0;
  for (Eigen::Index j = 0; j < d && accepted < g; ++j) {
    Vector c = v.row(j).adjoint();
    if (c.norm() <= kAcceptNorm) continue;
    for (int pass = 0; pass < 2; ++pass)
      if (accepted > 0) c -= q.leftCols(accepted) * (q.leftCols(accepted).adjoint() * c);
    const double norm = c.norm();
    if (norm <= kAcceptNorm) continue;
    q.col(accepted++) = c / norm;
  }
  if (accepted < g) throw Error(ErrorKind::InvalidInput, "eigenspace basis is rank deficient");
  Matrix u = v * q;
  for (Eigen::Index c = 0; c < g; ++c) fix_phase(u.col(c));
  std::vector<Vector> cols;
  cols.reserve(static_cast<std::size_t>(g));
  for (Eigen::Index c = 0; c < g; ++c) cols.emplace_back(u.col(c));
  std::stable_sort(cols.begin(), cols.end(), lex_greater);
  for (Eigen::Index c = 0; c < g; ++c) u.col(c) = cols[static_cast<std::size_t>(c)];
  return u;
}

}  // namespace

bool is_diagonal(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (i != j && m(i, j) != cplx(0.0, 0.0)) return false;
  return true;
}

bool is_real(const Matrix& m) { return (m.imag().array() == 0.0).all(); }

double hermiticity_error(const Matrix& m) {
  check_square(m);
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorKind::InvalidInput, "matrix shapes differ");
  // Entrywise on the interleaved real/imaginary parts.
  const std::span<const cplx> x(a.data(), static_cast<std::size_t>(a.size()));
  const std::span<const cplx> y(b.data(), static_cast<std::size_t>(b.size()));
  return kernels::active().max_abs_diff(kernels::as_doubles(x), kernels::as_doubles(y));
}

RealVector eigenvalues(const Matrix& m) {
  RealVector values;
  Matrix unused;
  solve(m, false, values, unused);
  std::sort(values.data(), values.data() + values.size(), std::greater<>());
  return values;
}

double min_eigenvalue(const Matrix& m) {
  const RealVector v = eigenvalues(m);
  return v(v.size() - 1);
}

double trace_norm_hermitian(const Matrix& m) { return eigenvalues(m).cwiseAbs().sum(); }

SpectralData canonical_spectrum(const Matrix& m) {
  RealVector raw_values;
  Matrix raw_vectors;
  solve(m, true, raw_values, raw_vectors);
  return canonicalize(raw_values, raw_vectors);
}

SpectralData canonicalize(const RealVector& raw_values, const Matrix& raw_vectors) {
  if (raw_vectors.cols() != raw_values.size() || raw_vectors.rows() != raw_values.size())
    throw Error(ErrorKind::InvalidInput, "eigenpair shapes differ");
  const auto order = descending_order(raw_values);
  const Eigen::Index d = raw_values.size();

  SpectralData out;
  out.values.resize(d);
  out.vectors.resize(d, d);
  const double scale = std::max(std::abs(raw_values(order.front())), std::abs(raw_values(order.back())));
  Eigen::Index start = 0;
  while (start < d) {
    Eigen::Index end = start + 1;
    while (end < d) {
      const double prev = raw_values(order[static_cast<std::size_t>(end - 1)]);
      const double cur = raw_values(order[static_cast<std::size_t>(end)]);
      if (prev - cur > std::max(kGroupAbs * scale, kGroupRel * std::abs(cur))) break;
      ++end;
    }
    const Eigen::Index g = end - start;
    Matrix block(d, g);
    double sum = 0.0;
    for (Eigen::Index c = 0; c < g; ++c) {
      const Eigen::Index src = order[static_cast<std::size_t>(start + c)];
      block.col(c) = raw_vectors.col(src);
      sum += raw_values(src);
    }
    out.values.segment(start, g).setConstant(sum / static_cast<double>(g));
    out.vectors.middleCols(start, g) = canonical_group_basis(block);
    start = end;
  }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  const Eigen::Index rb = b.rows();
  const Eigen::Index cb = b.cols();
  Matrix out = Matrix::Zero(a.rows() * rb, a.cols() * cb);
  const auto& k = kernels::active();
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index jb = 0; jb < cb; ++jb) {
      const std::span<const cplx> src(b.col(jb).data(), static_cast<std::size_t>(rb));
      cplx* column = out.col(j * cb + jb).data();
      for (Eigen::Index i = 0; i < a.rows(); ++i) {
        const cplx s = a(i, j);
        if (s == cplx(0.0, 0.0)) continue;
        k.caxpy(s, src, std::span<cplx>(column + i * rb, static_cast<std::size_t>(rb)));
      }
    }
  }
  return out;
}

Matrix trace_out_first(const Matrix& m, unsigned count) {
  check_square(m);
  const Eigen::Index d = m.rows();
  const Eigen::Index blocks = Eigen::Index{1} << count;
  if (d % blocks != 0 || d < blocks) throw Error(ErrorKind::InvalidInput, "cannot trace out more sites than present");
  const Eigen::Index size = d / blocks;
  Matrix out = Matrix::Zero(size, size);
  const auto& k = kernels::active();
  for (Eigen::Index b = 0; b < blocks; ++b)
    for (Eigen::Index j = 0; j < size; ++j) {
      const std::span<const double> src = kernels::as_doubles(
          std::span<const cplx>(m.col(b * size + j).data() + b * size, static_cast<std::size_t>(size)));
      k.axpy(1.0, src, kernels::as_doubles(std::span<cplx>(out.col(j).data(), static_cast<std::size_t>(size))));
    }
  return out;
}

Matrix trace_out_last(const Matrix& m, unsigned count) {
  check_square(m);
  const Eigen::Index d = m.rows();
  const Eigen::Index f = Eigen::Index{1} << count;
  if (d % f != 0 || d < f) throw Error(ErrorKind::InvalidInput, "cannot trace out more sites than present");
  const Eigen::Index size = d / f;
  Matrix out = Matrix::Zero(size, size);
  for (Eigen::Index j = 0; j < size; ++j)
    for (Eigen::Index i = 0; i < size; ++i) {
      cplx acc = 0.0;
      for (Eigen::Index t = 0; t < f; ++t) acc += m(i * f + t, j * f + t);
      out(i, j) = acc;
    }
  return out;
}

RealVector diagonal_in_basis(const Matrix& m, const Matrix& v) {
  check_square(m);
  if (v.rows() != m.rows()) throw Error(ErrorKind::InvalidInput, "basis dimension mismatch");
  RealVector out(v.cols());
  if (is_diagonal(m)) {
    const RealVector diag = m.diagonal().real();
    for (Eigen::Index c = 0; c < v.cols(); ++c) out(c) = (v.col(c).cwiseAbs2().array() * diag.array()).sum();
    return out;
  }
  const Matrix mv = m * v;
  const auto& k = kernels::active();
  for (Eigen::Index c = 0; c < v.cols(); ++c)
    out(c) = k.cdot(std::span<const cplx>(v.col(c).data(), static_cast<std::size_t>(v.rows())),
                    std::span<const cplx>(mv.col(c).data(), static_cast<std::size_t>(v.rows())))
                 .real();
  return out;
}

Matrix random_density(Eigen::Index dim, std::mt19937_64& rng, Eigen::Index rank) {
  if (rank <= 0) rank = dim;
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(dim, rank);
  for (Eigen::Index j = 0; j < rank; ++j)
    for (Eigen::Index i = 0; i < dim; ++i) g(i, j) = cplx(normal(rng), normal(rng));
  Matrix rho = g * g.adjoint();
  rho = 0.5 * (rho + rho.adjoint());
  return rho / rho.trace().real();
}

Vector random_unit_vector(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = cplx(normal(rng), normal(rng));
  return v / v.norm();
}

}  // namespace brudno::linalg
