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

// Translation-invariant states on a qubit chain, represented by their local
// marginals rho^(n) on sites [0, n-1].

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "brudno/linalg.hpp"

namespace brudno {

inline constexpr unsigned kDefaultSiteCap = 12;
// Below this single-site eigenvalue a faithful state is reported as near-singular.
inline constexpr double kFaithfulWarnThreshold = 1e-6;

struct IIDProduct {
  linalg::Matrix single_site;
};

// Convex combination of product states; not ergodic for the shift unless
// trivial.
struct MixtureOfProducts {
  std::vector<linalg::Matrix> components;
  std::vector<double> weights;
};

class ChainState {
 public:
  using Kind = std::variant<IIDProduct, MixtureOfProducts>;

  static ChainState iid_product(linalg::Matrix single_site);
  static ChainState mixture_of_products(std::vector<linalg::Matrix> components, std::vector<double> weights);

  const Kind& kind() const noexcept { return kind_; }
  bool faithful() const noexcept { return faithful_; }
  bool ergodic() const noexcept { return ergodic_; }
  double min_single_site_eigenvalue() const noexcept { return min_eigenvalue_; }
  // S(rho_1) for products, sum_k w_k S(rho_k) for mixtures of products.
  double closed_form_entropy_rate() const;
  std::string describe() const;

 private:
  ChainState(Kind kind, bool faithful, bool ergodic, double min_eig)
      : kind_(std::move(kind)), faithful_(faithful), ergodic_(ergodic), min_eigenvalue_(min_eig) {}

  Kind kind_;
  bool faithful_;
  bool ergodic_;
  double min_eigenvalue_;
};

class LocalDensityMatrix {
 public:
  // Checks hermiticity and unit trace (1e-10). Positivity is checked when
  // the spectrum is first computed.
  LocalDensityMatrix(unsigned sites, linalg::Matrix matrix, bool faithful);
  // With eigenpairs known in advance (products); they are canonicalized.
  LocalDensityMatrix(unsigned sites, linalg::Matrix matrix, bool faithful, linalg::RealVector values,
                     linalg::Matrix vectors);

  unsigned sites() const noexcept { return sites_; }
  Eigen::Index dim() const noexcept { return matrix_.rows(); }
  const linalg::Matrix& matrix() const noexcept { return matrix_; }
  bool faithful() const noexcept { return faithful_; }

  // Canonical spectral data, computed once and shared between copies.
  // Throws InvalidState on eigenvalues below -1e-10.
  const linalg::SpectralData& spectrum() const;

 private:
  struct Cache;
  unsigned sites_;
  linalg::Matrix matrix_;
  bool faithful_;
  std::shared_ptr<Cache> cache_;
};

LocalDensityMatrix local_density(const ChainState& state, unsigned n, unsigned cap = kDefaultSiteCap);

enum class TraceEnd { First, Last };
LocalDensityMatrix partial_trace(const LocalDensityMatrix& rho, TraceEnd end);

double von_neumann_entropy(const LocalDensityMatrix& rho);
// -sum r log2 r over a spectrum; throws InvalidState below -1e-10.
double von_neumann_entropy(const linalg::RealVector& spectrum);

struct EntropyRatePoint {
  unsigned n;
  double entropy;
  double rate;
};

struct EntropyRateReport {
  std::vector<EntropyRatePoint> per_n;
  double rate = 0.0;  // S(rho^(n_max)) / n_max
  double closed_form = 0.0;
  bool product = false;
  bool additive = true;  // products: S(rho^(n)) = n S(rho^(1)) within 1e-9
};

EntropyRateReport entropy_rate(const ChainState& state, unsigned n_max, unsigned cap = kDefaultSiteCap);

}  // namespace brudno
