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

#include <cmath>

#include "brudno/error.hpp"
#include "brudno/symbolic.hpp"
#include "doctest.h"

using namespace brudno;

namespace {
const Eigen::MatrixXd kChain = (Eigen::MatrixXd(2, 2) << 0.9, 0.1, 0.2, 0.8).finished();
}  // namespace

TEST_CASE("rational parsing") {
  CHECK(Rational::parse("3/10") == Rational{3, 10});
  CHECK(Rational::parse("6/20") == Rational{3, 10});
  CHECK(Rational::parse("0.25") == Rational{1, 4});
  CHECK(Rational::parse("7") == Rational{7, 1});
  CHECK_THROWS_AS(Rational::parse("1/0"), Error);
  CHECK_THROWS_AS(Rational::parse("abc"), Error);
}

TEST_CASE("block probabilities") {
  const auto fair = block_distribution(SymbolicSource::bernoulli_binary(0.5), 2);
  for (double p : fair.probabilities) CHECK(p == doctest::Approx(0.25));

  const auto b = SymbolicSource::bernoulli_binary(0.3);
  CHECK(block_distribution(b, 2).probability(SymbolString::parse("10")) == doctest::Approx(0.21));
  CHECK(std::exp2(log2_word_probability(b, SymbolString::parse("10"))) == doctest::Approx(0.21));

  const auto m = SymbolicSource::markov(kChain);
  CHECK(block_distribution(m, 2).probability(SymbolString::parse("01")) == doctest::Approx(2.0 / 3.0 * 0.1));
  const auto& ms = std::get<MarkovSource>(m.model());
  CHECK(ms.stationary(0) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("source validation") {
  CHECK_THROWS_AS(SymbolicSource::bernoulli({0.5, 0.6}), Error);
  CHECK_THROWS_AS(SymbolicSource::markov((Eigen::MatrixXd(2, 2) << 0.5, 0.4, 0.5, 0.5).finished()), Error);
  const auto reducible = SymbolicSource::markov((Eigen::MatrixXd(2, 2) << 1.0, 0.0, 0.0, 1.0).finished());
  CHECK_FALSE(reducible.ergodic());
  CHECK(SymbolicSource::markov(kChain).ergodic());
}

TEST_CASE("entropy oracles") {
  BlockDistribution point{2, 2, {1.0, 0.0, 0.0, 0.0}};
  CHECK(shannon_entropy(point) == 0.0);
  BlockDistribution uniform{2, 2, {0.25, 0.25, 0.25, 0.25}};
  CHECK(shannon_entropy(uniform) == doctest::Approx(2.0));
  CHECK(binary_entropy(0.3) == doctest::Approx(0.8812908992306927).epsilon(1e-14));

  CHECK(*closed_form_rate(SymbolicSource::bernoulli_binary(0.5)) == 1.0);
  CHECK(*closed_form_rate(SymbolicSource::bernoulli_binary(0.3)) == doctest::Approx(0.88129).epsilon(1e-5));
  CHECK(*closed_form_rate(SymbolicSource::markov(kChain)) == doctest::Approx(0.55331).epsilon(1e-5));
}

TEST_CASE("block entropies are subadditive and H_n / n is non-increasing") {
  for (const auto& src : {SymbolicSource::bernoulli_binary(0.3), SymbolicSource::markov(kChain)}) {
    const auto rep = ks_entropy_rate(src, 10);
    REQUIRE(rep.per_n.size() == 10);
    for (std::size_t i = 1; i < rep.per_n.size(); ++i)
      CHECK(rep.per_n[i].rate <= rep.per_n[i - 1].rate + 1e-9);
    for (std::size_t a = 1; a <= 5; ++a)
      for (std::size_t c = 1; c <= 5; ++c)
        CHECK(rep.per_n[a + c - 1].block_entropy <= rep.per_n[a - 1].block_entropy + rep.per_n[c - 1].block_entropy + 1e-9);
    // Markov: H_n = H_1 + (n-1) h exactly, so the estimate approaches h from above
    CHECK(rep.rate_estimate >= *closed_form_rate(src) - 1e-9);
  }
}

TEST_CASE("sampling") {
  CHECK(sample_path(SymbolicSource::bernoulli_binary(0.0), 5, 1) == SymbolString::parse("00000"));
  const auto b = SymbolicSource::bernoulli_binary(0.3);
  CHECK(sample_path(b, 100, 42) == sample_path(b, 100, 42));
  const auto s = sample_path(b, 100000, 7);
  double ones = 0;
  for (std::size_t i = 0; i < s.size(); ++i) ones += s[i];
  CHECK(std::abs(ones / 1e5 - 0.3) < 0.01);
}

TEST_CASE("orbit coding") {
  const IntervalPartition half{{Rational{0, 1}, Rational{1, 2}, Rational{1, 1}}};
  // 0.1 = 0.000110011..b
  CHECK(encode_orbit(OrbitMap::Doubling, {}, half, Rational{1, 10}, 10) == SymbolString::parse("0001100110"));
  CHECK(encode_orbit(OrbitMap::Doubling, {}, half, Rational{1, 3}, 6) == SymbolString::parse("010101"));
  CHECK(encode_orbit(OrbitMap::Rotation, Rational{0, 1}, half, Rational{3, 4}, 5) == SymbolString::parse("11111"));
  CHECK(encode_orbit(OrbitMap::Rotation, Rational{1, 2}, half, Rational{1, 4}, 4) == SymbolString::parse("0101"));
}
