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

#include "brudno/quantum_gacs.hpp"

#include <cmath>
#include <limits>

#include <fmt/core.h>

#include "brudno/error.hpp"
#include "brudno/semimeasure.hpp"

namespace brudno {
namespace {

using linalg::Matrix;
using linalg::RealVector;

constexpr double kTolerance = 1e-10;
constexpr double kFullRankRel = 1e-13;

void check_sites(const Matrix& m, unsigned n, const char* what) {
  if (m.rows() != (Eigen::Index{1} << n) || m.cols() != m.rows())
    throw Error(ErrorKind::InvalidInput, fmt::format("{} is not a {}-site operator", what, n));
}

}  // namespace

SemiDensityMatrix::SemiDensityMatrix(unsigned sites, Matrix matrix, bool elementary)
    : sites_(sites), matrix_(std::move(matrix)), elementary_(elementary) {
  check_sites(matrix_, sites_, "semi-density matrix");
  if (linalg::hermiticity_error(matrix_) > kTolerance)
    throw Error(ErrorKind::InvalidState, "semi-density matrix is not Hermitian");
  if (trace() > 1.0 + kTolerance) throw Error(ErrorKind::InvalidState, "semi-density matrix has trace above 1");
  if (linalg::min_eigenvalue(matrix_) < -kTolerance)
    throw Error(ErrorKind::InvalidState, "semi-density matrix is not positive");
}

Matrix compress(const Matrix& t2, unsigned n1, unsigned n2) {
  if (n1 > n2) throw Error(ErrorKind::InvalidInput, "compression needs n1 <= n2");
  check_sites(t2, n2, "operator");
  const Eigen::Index d1 = Eigen::Index{1} << n1;
  const Eigen::Index stride = Eigen::Index{1} << (n2 - n1);
  Matrix out(d1, d1);
  for (Eigen::Index b = 0; b < d1; ++b)
    for (Eigen::Index a = 0; a < d1; ++a) out(a, b) = t2(a * stride, b * stride);
  return out;
}

Matrix embed(const Matrix& t1, unsigned n1, unsigned n2) {
  if (n1 > n2) throw Error(ErrorKind::InvalidInput, "embedding needs n1 <= n2");
  check_sites(t1, n1, "operator");
  const Eigen::Index d1 = Eigen::Index{1} << n1;
  const Eigen::Index stride = Eigen::Index{1} << (n2 - n1);
  Matrix out = Matrix::Zero(d1 * stride, d1 * stride);
  for (Eigen::Index b = 0; b < d1; ++b)
    for (Eigen::Index a = 0; a < d1; ++a) out(a * stride, b * stride) = t1(a, b);
  return out;
}

double quasi_margin(const Matrix& t1, unsigned n1, const Matrix& t2, unsigned n2) {
  check_sites(t1, n1, "first operator");
  return linalg::min_eigenvalue(compress(t2, n1, n2) - t1);
}

bool quasi_greater(const Matrix& t1, unsigned n1, const Matrix& t2, unsigned n2, double tol) {
  return quasi_margin(t1, n1, t2, n2) >= -tol;
}

QuasiLimit limit_of_quasi_increasing(const std::vector<SemiDensityMatrix>& sequence, double tol) {
  if (sequence.empty()) throw Error(ErrorKind::InvalidSequence, "empty sequence");
  QuasiLimit out;
  out.traces.push_back(sequence.front().trace());
  for (std::size_t j = 1; j < sequence.size(); ++j) {
    const auto& prev = sequence[j - 1];
    const auto& cur = sequence[j];
    if (cur.sites() < prev.sites())
      throw Error(ErrorKind::InvalidSequence, fmt::format("member {} has fewer sites than its predecessor", j));
    const double margin = quasi_margin(prev.matrix(), prev.sites(), cur.matrix(), cur.sites());
    if (margin < -tol)
      throw Error(ErrorKind::InvalidSequence,
                  fmt::format("members {} and {} are not quasi-increasing (margin {:.3e})", j - 1, j, margin));
    if (cur.trace() < prev.trace() - tol)
      throw Error(ErrorKind::InvalidSequence, fmt::format("trace decreases at member {}", j));
    out.margins.push_back(margin);
    out.traces.push_back(cur.trace());
    out.gaps.push_back(linalg::trace_norm_hermitian(cur.matrix() - embed(prev.matrix(), prev.sites(), cur.sites())));
  }
  if (out.traces.back() > 1.0 + tol) throw Error(ErrorKind::InvalidSequence, "trace exceeds 1");
  out.limit = sequence.back().matrix();
  out.sites = sequence.back().sites();
  return out;
}

UniversalSemiDensity::UniversalSemiDensity(std::vector<UniversalMember> members, double tracial_weight)
    : members_(std::move(members)), tracial_(tracial_weight) {
  if (tracial_ < 0.0) throw Error(ErrorKind::InvalidFamily, "tracial weight must be non-negative");
  for (const auto& m : members_)
    if (!(m.weight > 0.0)) throw Error(ErrorKind::InvalidFamily, "member weights must be positive");
  if (total_weight() > 1.0 + 1e-12)
    throw Error(ErrorKind::InvalidFamily, fmt::format("family weights sum to {:.17g} > 1", total_weight()));
}

double UniversalSemiDensity::total_weight() const {
  double total = tracial_;
  for (const auto& m : members_) total += m.weight;
  return total;
}

RealizedUniversal UniversalSemiDensity::realize(unsigned n, unsigned cap, const LocalDensityMatrix* first_member) const {
  if (n > cap) throw Error(ErrorKind::ResourceLimit, fmt::format("{} sites exceed the site cap {}", n, cap));
  const Eigen::Index d = Eigen::Index{1} << n;
  RealizedUniversal out;
  out.sites = n;
  out.matrix = Matrix::Zero(d, d);
  out.matrix.diagonal().setConstant(tracial_ / static_cast<double>(d));

  if (members_.size() == 1 && std::holds_alternative<IIDProduct>(members_.front().state.kind())) {
    // Shares the product eigenbasis: mu_i = w r_i + t / 2^n.
    std::optional<LocalDensityMatrix> own;
    const LocalDensityMatrix* rho = first_member;
    if (!rho) rho = &own.emplace(local_density(members_.front().state, n, cap));
    const double w = members_.front().weight;
    out.matrix += w * rho->matrix();
    out.spectrum.values = (w * rho->spectrum().values).array() + tracial_ / static_cast<double>(d);
    out.spectrum.vectors = rho->spectrum().vectors;
  } else {
    for (std::size_t k = 0; k < members_.size(); ++k) {
      const auto& m = members_[k];
      if (k == 0 && first_member) out.matrix += m.weight * first_member->matrix();
      else out.matrix += m.weight * local_density(m.state, n, cap).matrix();
    }
    out.spectrum = linalg::canonical_spectrum(out.matrix);
  }
  const double top = out.spectrum.values(0);
  const double bottom = out.spectrum.values(d - 1);
  if (!(bottom > kFullRankRel * std::max(top, 1e-300)))
    throw Error(ErrorKind::InvalidFamily, fmt::format("universal semi-density is not full rank at n = {}", n));
  return out;
}

double dominance_margin(const Matrix& mu, const Matrix& rho, double w) { return linalg::min_eigenvalue(mu - w * rho); }

double gacs_upper(const Matrix& rho, const linalg::SpectralData& mu) {
  const RealVector overlaps = linalg::diagonal_in_basis(rho, mu.vectors);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < overlaps.size(); ++i) {
    if (mu.values(i) <= 0.0) {
      if (overlaps(i) > 1e-12) throw Error(ErrorKind::InvalidFamily, "universal semi-density is singular on the state");
      continue;
    }
    acc -= overlaps(i) * std::log2(mu.values(i));
  }
  return acc;
}

double gacs_lower(const Matrix& rho, const Matrix& mu) {
  if (rho.rows() != mu.rows()) throw Error(ErrorKind::InvalidInput, "dimension mismatch");
  const double t = rho.cwiseProduct(mu.transpose()).sum().real();
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidFamily, "Tr(rho mu) vanishes");
  return -std::log2(t);
}

GacsComplexities gacs_complexities(const Matrix& rho, const RealizedUniversal& mu) {
  return {gacs_upper(rho, mu.spectrum), gacs_lower(rho, mu.matrix)};
}

Matrix spectral_transport_unitary(const linalg::SpectralData& rho, const linalg::SpectralData& mu) {
  if (rho.values.size() != mu.values.size()) throw Error(ErrorKind::InvalidInput, "spectra have different sizes");
  if (!(rho.values.minCoeff() > 0.0) || !(mu.values.minCoeff() > 0.0))
    throw Error(ErrorKind::InvalidInput, "spectral transport needs full-rank operators");
  return rho.vectors * mu.vectors.adjoint();
}

TransportPoint transported_trace_pair(const Matrix& sigma, const Matrix& mu, const Matrix& u, unsigned n) {
  TransportPoint p;
  p.n = n;
  const double direct = sigma.cwiseProduct(mu.transpose()).sum().real();
  const Matrix moved = u * mu * u.adjoint();
  const double transported = sigma.cwiseProduct(moved.transpose()).sum().real();
  p.direct = std::log2(direct) / n;
  p.transported = std::log2(transported) / n;
  p.gap = p.direct - p.transported;
  p.weighted = n >= 2 ? p.transported + LengthWeighting{}.log2_delta(n) / n : p.transported;
  return p;
}

TransportReport transported_trace_compare(const ChainState& sigma, const ChainState& rho_state,
                                          const UniversalSemiDensity& mu, const std::vector<unsigned>& n_grid) {
  TransportReport report;
  for (unsigned n : n_grid) {
    if (n > 10) throw Error(ErrorKind::ResourceLimit, "transport diagnostics are limited to 10 sites");
    const LocalDensityMatrix s = local_density(sigma, n);
    const LocalDensityMatrix r = local_density(rho_state, n);
    const RealizedUniversal m = mu.realize(n);
    if (!(r.spectrum().values.minCoeff() > 0.0))
      throw Error(ErrorKind::InvalidInput, "spectral transport needs a full-rank state");
    // U mu U^dag = sum_i mu_i |r_i><r_i|.
    const RealVector on_r = linalg::diagonal_in_basis(s.matrix(), r.spectrum().vectors);
    TransportPoint p;
    p.n = n;
    p.direct = std::log2(s.matrix().cwiseProduct(m.matrix.transpose()).sum().real()) / n;
    p.transported = std::log2(m.spectrum.values.dot(on_r)) / n;
    p.gap = p.direct - p.transported;
    p.weighted = n >= 2 ? p.transported + LengthWeighting{}.log2_delta(n) / n : p.transported;
    if (!report.points.empty() && std::abs(p.gap) > std::abs(report.points.back().gap) + 1e-12)
      report.gap_nonincreasing = false;
    report.points.push_back(p);
  }
  return report;
}

}  // namespace brudno
