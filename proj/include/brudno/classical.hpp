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

// Classical Gacs complexity of a source relative to a computable
// semi-measure, its rate, typical sets and counting bounds.

#include <cstdint>
#include <optional>
#include <vector>

#include "brudno/semimeasure.hpp"
#include "brudno/symbolic.hpp"

namespace brudno {

struct SamplingOptions {
  std::uint64_t cap = kDefaultEnumerationCap;  // exact enumeration when k^n <= cap
  std::size_t samples = 256;                   // Monte-Carlo paths otherwise
  std::uint64_t seed = 1;
};

struct BlockComplexity {
  std::size_t n = 0;
  double value = 0.0;  // G_n = -sum nu log2 mu
  bool exact = true;
  double std_error = 0.0;
  std::size_t samples = 0;
};

// Exact over the block distribution when enumerable; otherwise a Monte-Carlo
// mean over sampled paths (orbit sources: evenly spaced orbit windows).
BlockComplexity gacs_block_complexity(const SymbolicSource& source, const SemiMeasure& mu, std::size_t n,
                                      const SamplingOptions& options = {});

struct GacsClassicalReport {
  std::vector<BlockComplexity> per_n;
  double rate_estimate = 0.0;  // G_n / n at the largest grid point
  double h = 0.0;
  double gap = 0.0;  // rate_estimate - h
  bool h_closed_form = false;
  bool rate_nonincreasing = true;  // finite-size trend diagnostic
};

// Throws InvalidInput for stochastic sources that are not ergodic.
GacsClassicalReport gacs_rate(const SymbolicSource& source, const SemiMeasure& mu, const std::vector<std::size_t>& n_grid,
                              const SamplingOptions& options = {});

struct RatePoint {
  std::size_t n;
  double rate;  // -log2 mu(prefix_n) / n
};

std::vector<RatePoint> per_sequence_rate(const SemiMeasure& mu, const SymbolString& s,
                                         const std::vector<std::size_t>& n_grid);

// Index of a member whose exact probabilities coincide with the source.
std::optional<std::size_t> find_source_member(const SemiMeasure& mu, const SymbolicSource& source);

struct LemmaBoundCheck {
  std::size_t n = 0;
  std::size_t member = 0;
  double g = 0.0;  // G_n
  double h = 0.0;  // H_n
  double log2_inv_weight = 0.0;
  double log2_inv_delta = 0.0;
  double log2_normalizer = 0.0;
  double bound = 0.0;
  bool holds = false;
};

// G_n <= H_n + log2(1/w) + log2(1/delta(n)) + log2(normalizer) for the
// member that matches the source; exhaustive in n. Needs n >= 2 and a
// length-weighted mu; without length weighting the delta terms are still
// added (the inequality only gets looser).
LemmaBoundCheck lemma_bound_check(const SymbolicSource& source, const SemiMeasure& mu, std::size_t member,
                                  std::size_t n, std::uint64_t cap = kDefaultEnumerationCap);

struct TypicalSetSummary {
  std::uint64_t count = 0;
  double mass = 0.0;  // under the source
};

struct ClassicalTypicalSets {
  std::size_t n = 0;
  double h = 0.0;
  double epsilon = 0.0;
  double threshold_exponent = 0.0;  // mu threshold is 2^(-n * threshold_exponent)
  std::vector<std::uint64_t> a;     // word codes
  std::vector<std::uint64_t> a_hat;
  std::vector<std::uint64_t> a_tilde;
  TypicalSetSummary a_summary, a_hat_summary, a_tilde_summary, b_summary;
  std::uint64_t heavy_count = 0;  // #{s : mu(s) >= threshold}
  double alpha = 0.0;             // log2(heavy_count) - n * threshold_exponent, -inf when empty
  double a_hat_bound = 0.0;       // 2^(-n eps + alpha + 1)
  bool a_hat_bound_holds = true;
};

// A: 2^-n(h+eps) <= nu(s) <= 2^-n(h-eps); A-hat / A-tilde: words inside /
// outside A with mu(s) >= 2^-n(threshold_exponent); B: mu below it. The
// threshold exponent defaults to h - 2 eps.
ClassicalTypicalSets typical_sets(const BlockDistribution& dist, double h, double epsilon, const SemiMeasure& mu,
                                  std::optional<double> threshold_exponent = std::nullopt);

struct CountingCheck {
  std::size_t n = 0;
  unsigned c = 0;
  std::uint64_t count = 0;  // #{s in Omega^n : mu(s) >= 2^-c}
  double bound = 0.0;       // 2^c
  double length_mass = 0.0; // sum over Omega^n of mu
  bool holds = true;
};

CountingCheck counting_bound_check(const SemiMeasure& mu, unsigned c, std::size_t n,
                                   std::uint64_t cap = kDefaultEnumerationCap);

// All (n, c) pairs with 1 <= n <= n_max and 1 <= c <= c_max; each length is
// enumerated once.
std::vector<CountingCheck> counting_sweep(const SemiMeasure& mu, std::size_t n_max, unsigned c_max,
                                          std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace brudno
