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

// Semi-density matrices, the quasi-order between operators on different
// chain lengths, the surrogate universal semi-density matrix and the two
// Gacs complexities -Tr(rho log2 mu) and -log2 Tr(rho mu).

#include <optional>
#include <string>
#include <vector>

#include "brudno/linalg.hpp"
#include "brudno/spin_chain.hpp"

namespace brudno {

// Positive operator with 0 <= Tr <= 1 on an n-site chain.
class SemiDensityMatrix {
 public:
  // Throws InvalidState when min eigenvalue < -1e-10 or Tr > 1 + 1e-10.
  SemiDensityMatrix(unsigned sites, linalg::Matrix matrix, bool elementary = false);

  unsigned sites() const noexcept { return sites_; }
  const linalg::Matrix& matrix() const noexcept { return matrix_; }
  double trace() const { return matrix_.trace().real(); }
  bool elementary() const noexcept { return elementary_; }

 private:
  unsigned sites_;
  linalg::Matrix matrix_;
  bool elementary_;
};

// P T P restricted to the n1-site subspace, where P projects the trailing
// n2 - n1 sites onto |0>: rows/columns j * 2^(n2-n1).
linalg::Matrix compress(const linalg::Matrix& t2, unsigned n1, unsigned n2);
// Embed an n1-site operator as T (x) |0..0><0..0| on n2 sites.
linalg::Matrix embed(const linalg::Matrix& t1, unsigned n1, unsigned n2);

// min eigenvalue of compress(T2) - T1.
double quasi_margin(const linalg::Matrix& t1, unsigned n1, const linalg::Matrix& t2, unsigned n2);
// T1 <=_q T2.
bool quasi_greater(const linalg::Matrix& t1, unsigned n1, const linalg::Matrix& t2, unsigned n2, double tol = 1e-10);

struct QuasiLimit {
  linalg::Matrix limit;
  unsigned sites = 0;
  std::vector<double> traces;
  std::vector<double> gaps;     // trace norm of T_j - embed(T_{j-1})
  std::vector<double> margins;  // quasi_margin of consecutive members
};

// Throws InvalidSequence when a consecutive pair is not quasi-increasing,
// traces decrease or exceed 1.
QuasiLimit limit_of_quasi_increasing(const std::vector<SemiDensityMatrix>& sequence, double tol = 1e-10);

struct UniversalMember {
  ChainState state;
  double weight;
};

// Realized mu^(n) with canonical spectral data.
struct RealizedUniversal {
  unsigned sites = 0;
  linalg::Matrix matrix;
  linalg::SpectralData spectrum;
  double trace() const { return matrix.trace().real(); }
};

class UniversalSemiDensity {
 public:
  // mu^(n) = sum_k w_k rho_k^(n) + t I / 2^n. Throws InvalidFamily on
  // non-positive member weights, negative t or total weight > 1.
  UniversalSemiDensity(std::vector<UniversalMember> members, double tracial_weight);

  const std::vector<UniversalMember>& members() const noexcept { return members_; }
  double tracial_weight() const noexcept { return tracial_; }
  double total_weight() const;

  // Throws InvalidFamily when mu^(n) is not full rank. A caller that
  // already holds rho^(n) of the first member may pass it to avoid
  // rebuilding it.
  RealizedUniversal realize(unsigned n, unsigned cap = kDefaultSiteCap,
                            const LocalDensityMatrix* first_member = nullptr) const;

 private:
  std::vector<UniversalMember> members_;
  double tracial_;
};

// min eigenvalue of mu - w rho; >= -tol means w rho <= mu.
double dominance_margin(const linalg::Matrix& mu, const linalg::Matrix& rho, double w);

struct GacsComplexities {
  double upper = 0.0;  // -Tr(rho log2 mu)
  double lower = 0.0;  // -log2 Tr(rho mu)
};

// Throw InvalidFamily when mu is singular on the support of rho.
double gacs_upper(const linalg::Matrix& rho, const linalg::SpectralData& mu);
double gacs_lower(const linalg::Matrix& rho, const linalg::Matrix& mu);
GacsComplexities gacs_complexities(const linalg::Matrix& rho, const RealizedUniversal& mu);

// U = sum_i |r_i><mu_i| over the canonical sorted spectra. Throws
// InvalidInput unless both are full rank.
linalg::Matrix spectral_transport_unitary(const linalg::SpectralData& rho, const linalg::SpectralData& mu);

struct TransportPoint {
  unsigned n = 0;
  double direct = 0.0;       // (1/n) log2 Tr(sigma mu)
  double transported = 0.0;  // (1/n) log2 Tr(sigma U mu U^dag)
  double gap = 0.0;          // direct - transported
  double weighted = 0.0;     // (1/n) log2(delta(n) Tr(sigma U mu U^dag))
};

struct TransportReport {
  std::vector<TransportPoint> points;
  bool gap_nonincreasing = true;  // |gap| trend
};

TransportPoint transported_trace_pair(const linalg::Matrix& sigma, const linalg::Matrix& mu, const linalg::Matrix& u,
                                      unsigned n);
// U built per n from rho_state's and mu's spectra; n <= 10.
TransportReport transported_trace_compare(const ChainState& sigma, const ChainState& rho_state,
                                          const UniversalSemiDensity& mu, const std::vector<unsigned>& n_grid);

}  // namespace brudno
