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

// Computable semi-measures on finite words. Every measure the library uses
// is an explicit weighted mixture of exact per-length word models, so the
// complexity surrogate -log2 mu(s) is computable and dominance over each
// member holds by construction.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "brudno/symbolic.hpp"
#include "brudno/symbols.hpp"

namespace brudno {

// Sequential Krichevsky-Trofimov estimator (add-1/2), order 0.
struct KTModel {};
// Order-1 context KT: uniform first symbol, then one KT counter per context.
struct MarkovKTModel {};
// Probability 1 on a single word, 0 on every other word.
struct PointMassModel {
  SymbolString word;
};
// k^-n on every word of length n.
struct UniformModel {};
// Exact Bernoulli or Markov source probabilities.
struct SourceModel {
  SymbolicSource source;
};

class WordModel {
 public:
  using Kind = std::variant<KTModel, MarkovKTModel, PointMassModel, UniformModel, SourceModel>;

  static WordModel kt(unsigned alphabet_size = 2);
  // order must be 1.
  static WordModel markov_kt(unsigned order = 1, unsigned alphabet_size = 2);
  static WordModel point_mass(SymbolString word);
  static WordModel uniform(unsigned alphabet_size = 2);
  static WordModel source(SymbolicSource source);

  const Kind& kind() const noexcept { return kind_; }
  unsigned alphabet_size() const noexcept { return alphabet_; }
  std::string describe() const;

  double log2_probability(const SymbolString& s) const;
  double probability(const SymbolString& s) const;
  // out[i] = log2 P(s_1 .. s_i) for i = 0 .. |s|. Not meaningful for point
  // masses below the full length (their per-length mass sits elsewhere).
  std::vector<double> prefix_log2_profile(const SymbolString& s) const;

 private:
  WordModel(Kind kind, unsigned alphabet) : kind_(std::move(kind)), alphabet_(alphabet) {}
  Kind kind_;
  unsigned alphabet_;
};

double kt_probability(const SymbolString& s);
double markov_kt_probability(const SymbolString& s, unsigned order = 1);

enum class DeltaKind {
  LogSquared,     // delta(n) = 1 / (n log2^2 n)
  InverseSquare,  // delta(n) = 1 / n^2
};

// Length prior lambda on word lengths: lambda(0) = r0, lambda(1) = r1 and
// lambda(n) = (1 - r0 - r1) delta(n) / sum_{m>=2} delta(m) for n >= 2.
struct LengthWeighting {
  DeltaKind delta = DeltaKind::LogSquared;
  double reserved_empty = 0.125;
  double reserved_single = 0.125;

  static LengthWeighting inverse_square() { return {DeltaKind::InverseSquare, 0.0, 0.0}; }

  double log2_delta(std::size_t n) const;  // n >= 2
  double delta_sum() const;                // sum_{m>=2} delta(m)
  // log2 of the constant in lambda(n) = delta(n) / normalizer.
  double log2_normalizer() const;
  double log2_lambda(std::size_t n) const;
  double lambda(std::size_t n) const;
};

struct FamilyMember {
  WordModel model;
  double weight;
};

class SemiMeasure {
 public:
  // mu(s) = lambda(|s|) * sum_k w_k nu_k(s), or without the lambda factor
  // when no length weighting is given. Throws InvalidInput on non-positive
  // weights, weight sum > 1 or mixed alphabets.
  static SemiMeasure mixture(std::vector<FamilyMember> members,
                             std::optional<LengthWeighting> weighting = std::nullopt);
  static SemiMeasure single(WordModel model, std::optional<LengthWeighting> weighting = std::nullopt);
  // lambda(|s|) * pi(s): a semi-measure on all finite words.
  static SemiMeasure length_weighted(WordModel model, LengthWeighting weighting = {});

  unsigned alphabet_size() const noexcept { return alphabet_; }
  const std::vector<FamilyMember>& members() const noexcept { return members_; }
  const std::optional<LengthWeighting>& weighting() const noexcept { return weighting_; }
  double total_weight() const;
  std::string describe() const;

  // The k-th member alone with weight 1 and the same length weighting, so
  // that weight(k) * member(k) <= *this holds pointwise.
  SemiMeasure member(std::size_t k) const;

  double log2_value(const SymbolString& s) const;
  double value(const SymbolString& s) const;

  // log2 mu of the length-n prefixes of s for every n in `lengths`.
  std::vector<double> prefix_log2_values(const SymbolString& s, const std::vector<std::size_t>& lengths) const;

 private:
  SemiMeasure(std::vector<FamilyMember> members, std::optional<LengthWeighting> weighting, unsigned alphabet)
      : members_(std::move(members)), weighting_(weighting), alphabet_(alphabet) {}

  std::vector<FamilyMember> members_;
  std::optional<LengthWeighting> weighting_;
  unsigned alphabet_;
};

// Bernoulli(p) for p = 0.05 .. 0.95, then order-1 Markov KT, then KT;
// weights proportional to 2^-index with total 1/2.
SemiMeasure default_family(std::optional<LengthWeighting> weighting = LengthWeighting{});

// -log2 mu(s); throws PositivityViolation when mu(s) = 0.
double complexity_surrogate(const SemiMeasure& mu, const SymbolString& s);

struct DominanceReport {
  bool pass = true;
  double weight = 0.0;
  double worst_ratio = 0.0;  // min over nu(s) > 0 of mu(s) / nu(s)
  std::optional<SymbolString> witness;
  std::uint64_t words_checked = 0;
};

// Exhaustive check of w * nu(s) <= mu(s) over all words of length <= n_max.
DominanceReport dominance_check(const SemiMeasure& mu, const SemiMeasure& nu, double w, std::size_t n_max,
                                std::uint64_t cap = kDefaultEnumerationCap);

// Calls f(word) for every word of length n over the alphabet, in word_code order.
template <typename F>
void for_each_word(unsigned alphabet_size, std::size_t n, std::uint64_t cap, F&& f) {
  const std::uint64_t count = word_count(alphabet_size, n, cap);
  for (std::uint64_t code = 0; code < count; ++code) f(word_from_code(code, n, alphabet_size));
}

}  // namespace brudno
