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

// Symbolic models of dynamical systems: i.i.d. and Markov shift sources,
// symbol sequences generated by interval maps under a partition, cylinder
// (block) distributions, and the Shannon / Kolmogorov-Sinai entropy rates
// computed from them. All logarithms are base 2.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "brudno/symbols.hpp"

namespace brudno {

inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 20;

// Exact non-negative rational in lowest terms. Parsed from "p/q" or from a
// plain decimal such as "0.125" (read exactly as 125/1000).
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational parse(std::string_view text);
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const;
  friend bool operator==(const Rational&, const Rational&) = default;
};

enum class OrbitMap { Doubling, Rotation };

// Half-open cells [cut_j, cut_{j+1}) covering [0, 1).
struct IntervalPartition {
  std::vector<Rational> cuts;  // 0 = cuts[0] < ... < cuts[k] = 1
  unsigned cells() const { return static_cast<unsigned>(cuts.size() - 1); }
};

struct BernoulliSource {
  std::vector<double> probabilities;
};

struct MarkovSource {
  Eigen::MatrixXd transition;  // row = current symbol
  Eigen::VectorXd stationary;
};

struct OrbitSource {
  OrbitMap map = OrbitMap::Doubling;
  Rational alpha;  // rotation angle; unused for the doubling map
  IntervalPartition partition;
  Rational x0;
  std::size_t orbit_length = 1 << 16;
};

class SymbolicSource {
 public:
  using Model = std::variant<BernoulliSource, MarkovSource, OrbitSource>;

  static SymbolicSource bernoulli(std::vector<double> probabilities);
  // Binary shorthand: probability of symbol 1.
  static SymbolicSource bernoulli_binary(double p_one);
  // Starts from the stationary distribution, which is computed here.
  static SymbolicSource markov(const Eigen::MatrixXd& transition);
  static SymbolicSource orbit(OrbitMap map, Rational alpha, IntervalPartition partition, Rational x0,
                              std::size_t orbit_length);

  const Model& model() const noexcept { return model_; }
  unsigned alphabet_size() const noexcept { return alphabet_; }
  // Irreducible aperiodic Markov chains and Bernoulli sources with all
  // probabilities positive. Orbit encoders are never flagged.
  bool ergodic() const noexcept { return ergodic_; }
  bool stochastic() const noexcept { return !std::holds_alternative<OrbitSource>(model_); }
  std::string describe() const;

 private:
  SymbolicSource(Model model, unsigned alphabet, bool ergodic)
      : model_(std::move(model)), alphabet_(alphabet), ergodic_(ergodic) {}

  Model model_;
  unsigned alphabet_;
  bool ergodic_;
};

// Probabilities of every length-n word, indexed by word_code.
struct BlockDistribution {
  unsigned alphabet_size = 2;
  std::size_t n = 0;
  std::vector<double> probabilities;
  bool empirical = false;

  double probability(const SymbolString& word) const;
};

BlockDistribution block_distribution(const SymbolicSource& source, std::size_t n,
                                     std::uint64_t cap = kDefaultEnumerationCap);

double shannon_entropy(const BlockDistribution& d);
double binary_entropy(double p);

struct EntropyPoint {
  std::size_t n;
  double block_entropy;
  double rate;  // block_entropy / n
};

struct EntropyReport {
  std::vector<EntropyPoint> per_n;
  double rate_estimate = 0.0;  // inf over the computed n of H_n / n
  std::optional<double> closed_form;
};

std::optional<double> closed_form_rate(const SymbolicSource& source);
EntropyReport ks_entropy_rate(const SymbolicSource& source, std::size_t n_max,
                              std::uint64_t cap = kDefaultEnumerationCap);

// Exact log2 probability of a word under a Bernoulli or Markov source
// (-infinity for impossible words).
double log2_word_probability(const SymbolicSource& source, const SymbolString& word);

SymbolString sample_path(const SymbolicSource& source, std::size_t n, std::uint64_t seed);

SymbolString encode_orbit(OrbitMap map, const Rational& alpha, const IntervalPartition& partition,
                          const Rational& x0, std::size_t n);

}  // namespace brudno
