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

#include "brudno/spin_chain.hpp"

#include <cmath>
#include <mutex>

#include <Eigen/Eigenvalues>
#include <fmt/core.h>

#include "brudno/error.hpp"
#include "brudno/kernels.hpp"

namespace brudno {
namespace {

using linalg::Matrix;
using linalg::RealVector;

constexpr double kStateTolerance = 1e-10;
constexpr double kFullRank = 1e-13;

void check_single_site(const Matrix& m, const char* what) {
  if (m.rows() != 2 || m.cols() != 2) throw Error(ErrorKind::InvalidState, fmt::format("{} must be 2x2", what));
  if (linalg::hermiticity_error(m) > kStateTolerance)
    throw Error(ErrorKind::InvalidState, fmt::format("{} is not Hermitian", what));
  if (std::abs(m.trace().real() - 1.0) > kStateTolerance || std::abs(m.trace().imag()) > kStateTolerance)
    throw Error(ErrorKind::InvalidState, fmt::format("{} does not have unit trace", what));
  if (linalg::min_eigenvalue(m) < -kStateTolerance)
    throw Error(ErrorKind::InvalidState, fmt::format("{} is not positive semidefinite", what));
}

Matrix kron_power(const Matrix& m, unsigned n) {
  Matrix acc = m;
  for (unsigned i = 1; i < n; ++i) acc = linalg::kron(acc, m);
  return acc;
}

RealVector kron_power(const RealVector& v, unsigned n) {
  RealVector acc = v;
  for (unsigned i = 1; i < n; ++i) {
    RealVector next(acc.size() * v.size());
    for (Eigen::Index a = 0; a < acc.size(); ++a)
      for (Eigen::Index b = 0; b < v.size(); ++b) next(a * v.size() + b) = acc(a) * v(b);
    acc = std::move(next);
  }
  return acc;
}

}  // namespace

ChainState ChainState::iid_product(Matrix single_site) {
  check_single_site(single_site, "single-site density matrix");
  const double min_eig = linalg::min_eigenvalue(single_site);
  return ChainState(IIDProduct{std::move(single_site)}, min_eig > kFullRank, true, min_eig);
}

ChainState ChainState::mixture_of_products(std::vector<Matrix> components, std::vector<double> weights) {
  if (components.empty() || components.size() != weights.size())
    throw Error(ErrorKind::InvalidState, "mixture needs one weight per component");
  double total = 0.0;
  double min_eig = 1.0;
  bool faithful = false;
  for (std::size_t k = 0; k < components.size(); ++k) {
    check_single_site(components[k], "mixture component");
    if (!(weights[k] > 0.0)) throw Error(ErrorKind::InvalidState, "mixture weights must be positive");
    total += weights[k];
    const double e = linalg::min_eigenvalue(components[k]);
    min_eig = std::min(min_eig, e);
    faithful = faithful || e > kFullRank;
  }
  if (std::abs(total - 1.0) > 1e-12) throw Error(ErrorKind::InvalidState, "mixture weights must sum to 1");
  bool ergodic = true;
  for (std::size_t k = 1; k < components.size(); ++k)
    if (linalg::max_abs_diff(components[k], components[0]) > 0.0) ergodic = false;
  return ChainState(MixtureOfProducts{std::move(components), std::move(weights)}, faithful, ergodic, min_eig);
}

double ChainState::closed_form_entropy_rate() const {
  if (const auto* p = std::get_if<IIDProduct>(&kind_)) return von_neumann_entropy(linalg::eigenvalues(p->single_site));
  const auto& m = std::get<MixtureOfProducts>(kind_);
  double rate = 0.0;
  for (std::size_t k = 0; k < m.components.size(); ++k)
    rate += m.weights[k] * von_neumann_entropy(linalg::eigenvalues(m.components[k]));
  return rate;
}

std::string ChainState::describe() const {
  auto site = [](const Matrix& m) {
    return fmt::format("[[{:g}{:+g}i, {:g}{:+g}i], [{:g}{:+g}i, {:g}{:+g}i]]", m(0, 0).real(), m(0, 0).imag(),
                       m(0, 1).real(), m(0, 1).imag(), m(1, 0).real(), m(1, 0).imag(), m(1, 1).real(), m(1, 1).imag());
  };
  if (const auto* p = std::get_if<IIDProduct>(&kind_)) return "iid-product " + site(p->single_site);
  const auto& m = std::get<MixtureOfProducts>(kind_);
  std::string s = "mixture-of-products";
  for (std::size_t k = 0; k < m.components.size(); ++k) s += fmt::format(" {:g}*{}", m.weights[k], site(m.components[k]));
  return s;
}

struct LocalDensityMatrix::Cache {
  std::once_flag once;
  std::optional<std::pair<RealVector, Matrix>> raw;
  linalg::SpectralData spectrum;
};

LocalDensityMatrix::LocalDensityMatrix(unsigned sites, Matrix matrix, bool faithful)
    : sites_(sites), matrix_(std::move(matrix)), faithful_(faithful), cache_(std::make_shared<Cache>()) {
  if (matrix_.rows() != (Eigen::Index{1} << sites) || matrix_.cols() != matrix_.rows())
    throw Error(ErrorKind::InvalidState, fmt::format("expected a {}-site matrix", sites));
  if (linalg::hermiticity_error(matrix_) > kStateTolerance)
    throw Error(ErrorKind::InvalidState, "local density matrix is not Hermitian");
  if (std::abs(matrix_.trace().real() - 1.0) > kStateTolerance)
    throw Error(ErrorKind::InvalidState, "local density matrix does not have unit trace");
}

LocalDensityMatrix::LocalDensityMatrix(unsigned sites, Matrix matrix, bool faithful, RealVector values, Matrix vectors)
    : LocalDensityMatrix(sites, std::move(matrix), faithful) {
  cache_->raw.emplace(std::move(values), std::move(vectors));
}

const linalg::SpectralData& LocalDensityMatrix::spectrum() const {
  std::call_once(cache_->once, [this] {
    linalg::SpectralData s = cache_->raw ? linalg::canonicalize(cache_->raw->first, cache_->raw->second)
                                         : linalg::canonical_spectrum(matrix_);
    if (s.values(s.values.size() - 1) < -kStateTolerance)
      throw Error(ErrorKind::InvalidState, "local density matrix has a negative eigenvalue");
    cache_->raw.reset();
    cache_->spectrum = std::move(s);
  });
  return cache_->spectrum;
}

LocalDensityMatrix local_density(const ChainState& state, unsigned n, unsigned cap) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "site count must be at least 1");
  if (n > cap) throw Error(ErrorKind::ResourceLimit, fmt::format("{} sites exceed the site cap {}", n, cap));
  if (const auto* p = std::get_if<IIDProduct>(&state.kind())) {
    Eigen::SelfAdjointEigenSolver<Matrix> single(p->single_site);
    Matrix vectors = linalg::is_diagonal(p->single_site) ? Matrix::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n)
                                                         : kron_power(single.eigenvectors(), n);
    RealVector values = linalg::is_diagonal(p->single_site) ? kron_power(RealVector(p->single_site.diagonal().real()), n)
                                                            : kron_power(RealVector(single.eigenvalues()), n);
    return LocalDensityMatrix(n, kron_power(p->single_site, n), state.faithful(), std::move(values), std::move(vectors));
  }
  const auto& m = std::get<MixtureOfProducts>(state.kind());
  const Eigen::Index d = Eigen::Index{1} << n;
  Matrix acc = Matrix::Zero(d, d);
  for (std::size_t k = 0; k < m.components.size(); ++k) acc += m.weights[k] * kron_power(m.components[k], n);
  return LocalDensityMatrix(n, std::move(acc), state.faithful());
}

LocalDensityMatrix partial_trace(const LocalDensityMatrix& rho, TraceEnd end) {
  if (rho.sites() < 2) throw Error(ErrorKind::InvalidInput, "cannot trace out the only site");
  Matrix reduced = end == TraceEnd::First ? linalg::trace_out_first(rho.matrix()) : linalg::trace_out_last(rho.matrix());
  return LocalDensityMatrix(rho.sites() - 1, std::move(reduced), rho.faithful());
}

double von_neumann_entropy(const RealVector& spectrum) {
  if (spectrum.size() > 0 && spectrum.minCoeff() < -kStateTolerance)
    throw Error(ErrorKind::InvalidState, "negative eigenvalue in an entropy computation");
  return kernels::active().entropy_bits({spectrum.data(), static_cast<std::size_t>(spectrum.size())});
}

double von_neumann_entropy(const LocalDensityMatrix& rho) { return von_neumann_entropy(rho.spectrum().values); }

EntropyRateReport entropy_rate(const ChainState& state, unsigned n_max, unsigned cap) {
  if (n_max < 1) throw Error(ErrorKind::InvalidInput, "n_max must be at least 1");
  if (n_max > cap) throw Error(ErrorKind::ResourceLimit, fmt::format("{} sites exceed the site cap {}", n_max, cap));
  EntropyRateReport report;
  report.product = std::holds_alternative<IIDProduct>(state.kind());
  report.closed_form = state.closed_form_entropy_rate();
  for (unsigned n = 1; n <= n_max; ++n) {
    const double s = von_neumann_entropy(local_density(state, n, cap));
    report.per_n.push_back({n, s, s / n});
  }
  report.rate = report.per_n.back().rate;
  if (report.product) {
    const double s1 = report.per_n.front().entropy;
    for (const auto& p : report.per_n)
      if (std::abs(p.entropy - p.n * s1) > 1e-9) report.additive = false;
  }
  return report;
}

}  // namespace brudno
