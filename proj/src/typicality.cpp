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

#include "brudno/typicality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <fmt/core.h>

#include "brudno/classical.hpp"
#include "brudno/error.hpp"
#include "brudno/semimeasure.hpp"

namespace brudno {
namespace {

using linalg::Matrix;
using linalg::RealVector;
using linalg::Vector;

constexpr double kBoundTolerance = 1e-9;

// <psi| m |psi>, with a shortcut for diagonal m.
double expectation(const Matrix& m, bool diagonal, const Vector& psi) {
  if (diagonal) return (psi.cwiseAbs2().array() * m.diagonal().real().array()).sum();
  return psi.dot(m * psi).real();
}

bool same_state(const ChainState& a, const ChainState& b) {
  if (const auto* x = std::get_if<IIDProduct>(&a.kind())) {
    const auto* y = std::get_if<IIDProduct>(&b.kind());
    return y && linalg::max_abs_diff(x->single_site, y->single_site) <= 1e-15;
  }
  const auto& x = std::get<MixtureOfProducts>(a.kind());
  const auto* y = std::get_if<MixtureOfProducts>(&b.kind());
  if (!y || y->components.size() != x.components.size()) return false;
  for (std::size_t k = 0; k < x.components.size(); ++k)
    if (std::abs(x.weights[k] - y->weights[k]) > 1e-15 ||
        linalg::max_abs_diff(x.components[k], y->components[k]) > 1e-15)
      return false;
  return true;
}

}  // namespace

TypicalIndexSets typical_index_sets(const RealVector& r, const RealVector& mu, unsigned n, double s, double epsilon) {
  if (r.size() != mu.size() || r.size() != (Eigen::Index{1} << n))
    throw Error(ErrorKind::InvalidInput, "spectra must both have 2^n entries");
  if (!(epsilon > 0.0)) throw Error(ErrorKind::InvalidInput, "epsilon must be positive");
  if (s < 0.0) throw Error(ErrorKind::InvalidInput, "entropy rate must be non-negative");
  TypicalIndexSets out;
  out.n = n;
  out.epsilon = epsilon;
  out.s = s;
  const double nn = static_cast<double>(n);
  const double lo = -nn * (s + epsilon);
  const double hi = -nn * (s - epsilon);
  const double light = -nn * (s - 2.0 * epsilon);
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    const double lr = r(i) > 0.0 ? std::log2(r(i)) : -std::numeric_limits<double>::infinity();
    const double lm = mu(i) > 0.0 ? std::log2(mu(i)) : -std::numeric_limits<double>::infinity();
    const bool in_a = lr >= lo && lr <= hi;
    const bool in_b = lm < light;
    if (in_a) out.a.push_back(i);
    if (in_b) out.b.push_back(i);
    else ++out.b_complement;
    if (in_a && in_b) out.a_and_b.push_back(i);
  }
  out.alpha_vacuous = out.b_complement == 0;
  out.alpha = out.alpha_vacuous ? -std::numeric_limits<double>::infinity()
                                : std::log2(static_cast<double>(out.b_complement)) - nn * (s - 2.0 * epsilon);
  return out;
}

TypicalProjector typical_projector(const LocalDensityMatrix& rho, const TypicalIndexSets& sets) {
  if (rho.sites() != sets.n) throw Error(ErrorKind::InvalidInput, "index sets belong to another n");
  const auto& spec = rho.spectrum();
  TypicalProjector p;
  p.n = sets.n;
  p.epsilon = sets.epsilon;
  const auto dim = static_cast<Eigen::Index>(sets.a_and_b.size());
  p.basis.resize(rho.dim(), dim);
  p.weights.resize(dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    const Eigen::Index i = sets.a_and_b[static_cast<std::size_t>(c)];
    p.basis.col(c) = spec.vectors.col(i);
    p.weights(c) = spec.values(i);
  }
  return p;
}

MinimalProjection sample_minimal_projection(const TypicalProjector& p, std::uint64_t seed) {
  if (p.degenerate()) throw Error(ErrorKind::DegenerateTypicality, "typical subspace is empty");
  std::mt19937_64 rng(seed);
  MinimalProjection out;
  out.coefficients = linalg::random_unit_vector(p.dim(), rng);
  out.psi = p.basis * out.coefficients;
  return out;
}

std::optional<double> member_weight(const UniversalSemiDensity& family, const ChainState& state) {
  std::optional<double> w;
  for (const auto& m : family.members())
    if (same_state(m.state, state)) w = w.value_or(0.0) + m.weight;
  return w;
}

BrudnoQuantumReport verify_quantum_brudno(const ChainState& state, const UniversalSemiDensity& family, unsigned n,
                                          double epsilon, const QuantumCheckOptions& options) {
  if (!state.faithful()) throw Error(ErrorKind::InvalidState, "the state is not faithful");
  std::optional<double> w;
  if (options.item4) {
    w = member_weight(family, state);
    if (!w) throw Error(ErrorKind::InvalidFamily, "the state is not a member of the universal family");
  }
  const LocalDensityMatrix rho = local_density(state, n, options.cap);
  const RealizedUniversal mu = family.realize(n, options.cap);
  return check_typicality(rho, mu, state.closed_form_entropy_rate(), w, epsilon, options);
}

BrudnoQuantumReport check_typicality(const LocalDensityMatrix& rho, const RealizedUniversal& mu, double s,
                                     std::optional<double> w, double epsilon, const QuantumCheckOptions& options) {
  if (rho.sites() != mu.sites) throw Error(ErrorKind::InvalidInput, "state and universal matrix sizes differ");
  if (!rho.faithful()) throw Error(ErrorKind::InvalidState, "the state is not faithful");
  const unsigned n = rho.sites();
  BrudnoQuantumReport report;
  report.n = n;
  report.epsilon = epsilon;
  report.s = s;
  const double nn = static_cast<double>(n);
  const TypicalIndexSets sets = typical_index_sets(rho.spectrum().values, mu.spectrum.values, n, s, epsilon);
  const TypicalProjector p = typical_projector(rho, sets);
  report.a_count = sets.a.size();
  report.b_complement = sets.b_complement;
  report.alpha = sets.alpha;
  report.alpha_vacuous = sets.alpha_vacuous;
  report.degenerate = p.degenerate();

  const double tail = sets.alpha_vacuous ? 0.0 : std::exp2(-nn * epsilon + sets.alpha);
  report.item1.measured = p.weights.sum();
  report.item1.bound = 1.0 - epsilon - tail;
  report.item1.pass = report.item1.measured >= report.item1.bound;

  report.item2.dim = static_cast<std::size_t>(p.dim());
  report.item2.lower = (1.0 - epsilon - tail) * std::exp2(nn * (s - epsilon));
  report.item2.lower_plain = (1.0 - epsilon) * std::exp2(nn * (s - epsilon));
  report.item2.upper = std::exp2(nn * (s + epsilon));
  report.item2.pass = static_cast<double>(report.item2.dim) > report.item2.lower &&
                      static_cast<double>(report.item2.dim) < report.item2.upper;

  report.item3.lower = std::exp2(-nn * (s + epsilon));
  report.item3.upper = std::exp2(-nn * (s - epsilon));
  if (w) {
    Item4 item4;
    item4.weight = *w;
    item4.alpha_plus = sets.alpha_vacuous ? 0.0 : std::max(sets.alpha, 0.0);
    item4.slack = (item4.alpha_plus + std::log2(1.0 / *w)) / nn;
    item4.band_lower = s - 2.0 * epsilon - item4.slack;
    item4.band_upper = s + epsilon + item4.slack;
    report.item4 = item4;
  }
  if (p.degenerate()) return report;

  const bool rho_diag = linalg::is_diagonal(rho.matrix());
  const bool mu_diag = linalg::is_diagonal(mu.matrix);
  auto& i3 = report.item3;
  i3.min_value = std::numeric_limits<double>::infinity();
  i3.max_value = -std::numeric_limits<double>::infinity();
  double sum4 = 0.0;
  auto check = [&](const Vector& psi, int extreme) {
    const double omega = expectation(rho.matrix(), rho_diag, psi);
    ++i3.checked;
    i3.min_value = std::min(i3.min_value, omega);
    i3.max_value = std::max(i3.max_value, omega);
    if (omega < i3.lower * (1.0 - kBoundTolerance) || omega > i3.upper * (1.0 + kBoundTolerance)) ++i3.failures;
    if (report.item4) {
      auto& i4 = *report.item4;
      const double value = -std::log2(expectation(mu.matrix, mu_diag, psi)) / nn;
      if (i4.checked == 0) {
        i4.min_value = value;
        i4.max_value = value;
      }
      ++i4.checked;
      i4.min_value = std::min(i4.min_value, value);
      i4.max_value = std::max(i4.max_value, value);
      sum4 += value;
      if (extreme > 0) i4.extreme_high_r = value;
      if (extreme < 0) i4.extreme_low_r = value;
      if (value < i4.band_lower - kBoundTolerance || value > i4.band_upper + kBoundTolerance) ++i4.failures;
    }
  };
  check(p.basis.col(0), 1);
  check(p.basis.col(p.dim() - 1), -1);
  for (std::size_t j = 0; j < options.samples; ++j) check(sample_minimal_projection(p, options.seed + j).psi, 0);
  i3.pass = i3.failures == 0;
  if (report.item4) {
    auto& i4 = *report.item4;
    i4.mean_value = sum4 / static_cast<double>(i4.checked);
    i4.pass = i4.failures == 0;
  }
  return report;
}

BrudnoQuantumReport verify_items_1_2_3(const ChainState& state, const UniversalSemiDensity& family, unsigned n,
                                       double epsilon, QuantumCheckOptions options) {
  options.item4 = false;
  return verify_quantum_brudno(state, family, n, epsilon, options);
}

std::vector<BrudnoQuantumReport> verify_item_4(const ChainState& state, const UniversalSemiDensity& family,
                                               const std::vector<unsigned>& n_grid, double epsilon,
                                               QuantumCheckOptions options) {
  options.item4 = true;
  std::vector<BrudnoQuantumReport> out;
  for (unsigned n : n_grid) out.push_back(verify_quantum_brudno(state, family, n, epsilon, options));
  return out;
}

ClassicalReduction classical_reduction(const ChainState& state, unsigned n, double epsilon) {
  const auto* p = std::get_if<IIDProduct>(&state.kind());
  if (!p || !linalg::is_diagonal(p->single_site))
    throw Error(ErrorKind::InvalidInput, "classical reduction needs a diagonal product state");
  ClassicalReduction out;
  out.n = n;
  out.epsilon = epsilon;
  const double s = state.closed_form_entropy_rate();

  const LocalDensityMatrix rho = local_density(state, n, std::max(n, kDefaultSiteCap));
  const auto& spec = rho.spectrum();
  const TypicalIndexSets sets = typical_index_sets(spec.values, spec.values, n, s, epsilon);
  std::vector<std::uint64_t> quantum;
  for (Eigen::Index i : sets.a) {
    Eigen::Index row = 0;
    spec.vectors.col(i).cwiseAbs().maxCoeff(&row);
    quantum.push_back(static_cast<std::uint64_t>(row));
  }
  std::sort(quantum.begin(), quantum.end());

  const SymbolicSource source =
      SymbolicSource::bernoulli({p->single_site(0, 0).real(), p->single_site(1, 1).real()});
  const ClassicalTypicalSets classical =
      typical_sets(block_distribution(source, n), s, epsilon, SemiMeasure::single(WordModel::uniform(2)));
  out.quantum_count = quantum.size();
  out.classical_count = classical.a.size();
  out.equal = quantum == classical.a;
  return out;
}

}  // namespace brudno
