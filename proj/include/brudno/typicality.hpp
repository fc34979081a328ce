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

// Entropy-typical eigenvectors of rho^(n) that carry small universal
// weight, the spectral projector onto them, minimal projections beneath it
// and the four finite-n bounds relating them to the entropy rate.

#include <cstdint>
#include <optional>
#include <vector>

#include "brudno/linalg.hpp"
#include "brudno/quantum_gacs.hpp"
#include "brudno/spin_chain.hpp"

namespace brudno {

struct TypicalIndexSets {
  unsigned n = 0;
  double epsilon = 0.0;
  double s = 0.0;
  // Positions in the descending spectra.
  std::vector<Eigen::Index> a;  // 2^-n(s+eps) <= r_i <= 2^-n(s-eps)
  std::vector<Eigen::Index> b;  // mu_i < 2^-n(s-2eps)
  std::vector<Eigen::Index> a_and_b;
  std::size_t b_complement = 0;
  // log2 |B^c| - n(s - 2eps); -inf (vacuous) when B^c is empty.
  double alpha = 0.0;
  bool alpha_vacuous = false;
};

TypicalIndexSets typical_index_sets(const linalg::RealVector& r, const linalg::RealVector& mu, unsigned n, double s,
                                    double epsilon);

// p = sum_{i in A and B} |r_i><r_i|, stored as the isometry of its columns.
struct TypicalProjector {
  unsigned n = 0;
  double epsilon = 0.0;
  linalg::Matrix basis;        // 2^n x dim
  linalg::RealVector weights;  // r_i for the columns of basis
  Eigen::Index dim() const { return basis.cols(); }
  bool degenerate() const { return basis.cols() == 0; }
  linalg::Matrix matrix() const { return basis * basis.adjoint(); }
};

TypicalProjector typical_projector(const LocalDensityMatrix& rho, const TypicalIndexSets& sets);

struct MinimalProjection {
  linalg::Vector psi;           // in the standard basis
  linalg::Vector coefficients;  // in the basis of the projector
};

// Haar-random unit vector in the range of p. Throws DegenerateTypicality
// when p = 0.
MinimalProjection sample_minimal_projection(const TypicalProjector& p, std::uint64_t seed);

struct Item1 {
  double measured = 0.0;  // Tr(rho p)
  double bound = 0.0;     // 1 - eps - 2^(-n eps + alpha)
  bool pass = false;
};

struct Item2 {
  std::size_t dim = 0;
  double lower = 0.0;        // (1 - eps - 2^(-n eps + alpha)) 2^n(s-eps)
  double lower_plain = 0.0;  // (1 - eps) 2^n(s-eps), reported only
  double upper = 0.0;        // 2^n(s+eps)
  bool pass = false;
};

struct Item3 {
  std::size_t checked = 0;  // sampled vectors plus extremes
  double lower = 0.0;       // 2^-n(s+eps)
  double upper = 0.0;       // 2^-n(s-eps)
  double min_value = 0.0;
  double max_value = 0.0;
  std::size_t failures = 0;
  bool pass = false;
};

struct Item4 {
  std::size_t checked = 0;
  double weight = 0.0;      // weight of the state in the family
  double alpha_plus = 0.0;  // max(alpha, 0)
  double slack = 0.0;       // (alpha_plus + log2(1/w)) / n
  double band_lower = 0.0;  // s - 2eps - slack
  double band_upper = 0.0;  // s + eps + slack
  double min_value = 0.0;   // of -(1/n) log2 <psi|mu|psi>
  double max_value = 0.0;
  double mean_value = 0.0;
  double extreme_high_r = 0.0;  // value at the largest r_i in A and B
  double extreme_low_r = 0.0;   // value at the smallest
  std::size_t failures = 0;
  bool pass = false;
};

struct BrudnoQuantumReport {
  unsigned n = 0;
  double epsilon = 0.0;
  double s = 0.0;
  std::size_t a_count = 0;
  std::size_t b_complement = 0;
  double alpha = 0.0;
  bool alpha_vacuous = false;
  bool degenerate = false;  // A and B empty
  Item1 item1;
  Item2 item2;
  Item3 item3;
  std::optional<Item4> item4;
};

struct QuantumCheckOptions {
  std::size_t samples = 200;
  std::uint64_t seed = 1;
  unsigned cap = kDefaultSiteCap;
  bool item4 = true;
};

// Weight of the family member equal to `state`; nullopt when absent.
std::optional<double> member_weight(const UniversalSemiDensity& family, const ChainState& state);

// Items 1-3 and, when requested, item 4 at one (n, eps), sharing the
// projector and the sampled minimal projections. Throws InvalidState for
// non-faithful states and InvalidFamily when item 4 is requested but the
// state is not a family member.
BrudnoQuantumReport verify_quantum_brudno(const ChainState& state, const UniversalSemiDensity& family, unsigned n,
                                          double epsilon, const QuantumCheckOptions& options = {});

// Same checks on precomputed matrices; `w` enables item 4.
BrudnoQuantumReport check_typicality(const LocalDensityMatrix& rho, const RealizedUniversal& mu, double s,
                                     std::optional<double> w, double epsilon, const QuantumCheckOptions& options = {});

BrudnoQuantumReport verify_items_1_2_3(const ChainState& state, const UniversalSemiDensity& family, unsigned n,
                                       double epsilon, QuantumCheckOptions options = {});

// Item 4 over an n grid. Degenerate n (empty A and B) are reported with no
// item-4 entry.
std::vector<BrudnoQuantumReport> verify_item_4(const ChainState& state, const UniversalSemiDensity& family,
                                               const std::vector<unsigned>& n_grid, double epsilon,
                                               QuantumCheckOptions options = {});

struct ClassicalReduction {
  unsigned n = 0;
  double epsilon = 0.0;
  std::size_t quantum_count = 0;
  std::size_t classical_count = 0;
  bool equal = false;
};

// For a diagonal product state, the quantum set A (as standard-basis
// indices) against the entropy-typical words of the matching Bernoulli
// source.
ClassicalReduction classical_reduction(const ChainState& state, unsigned n, double epsilon);

}  // namespace brudno
