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
#include "brudno/semimeasure.hpp"
#include "doctest.h"

using namespace brudno;

namespace {
SymbolString bits(const char* s) { return SymbolString::parse(s); }
}  // namespace

TEST_CASE("KT oracles") {
  CHECK(kt_probability(bits("")) == 1.0);
  CHECK(kt_probability(bits("0")) == 0.5);
  CHECK(kt_probability(bits("0000")) == doctest::Approx(35.0 / 128.0).epsilon(1e-14));
  CHECK(kt_probability(bits("01")) == doctest::Approx(0.125).epsilon(1e-14));
  // each length sums to one
  for (std::size_t n = 1; n <= 10; ++n) {
    double total = 0;
    for_each_word(2, n, kDefaultEnumerationCap, [&](const SymbolString& s) { total += kt_probability(s); });
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("Markov KT oracles") {
  // 1/2 for the first symbol, then KT per context: 0|0 -> 1/2, 1|0 -> 1/4, 0|1 -> 1/2
  CHECK(markov_kt_probability(bits("0010")) == doctest::Approx(1.0 / 32.0).epsilon(1e-14));
  CHECK(markov_kt_probability(bits("1")) == 0.5);
  for (std::size_t n = 1; n <= 10; ++n) {
    double total = 0;
    for_each_word(2, n, kDefaultEnumerationCap, [&](const SymbolString& s) { total += markov_kt_probability(s); });
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("prefix profiles agree with direct probabilities") {
  const SymbolString s = bits("0110100010111");
  for (const auto& m : {WordModel::kt(), WordModel::markov_kt(), WordModel::uniform(),
                        WordModel::source(SymbolicSource::bernoulli_binary(0.3))}) {
    const auto prof = m.prefix_log2_profile(s);
    REQUIRE(prof.size() == s.size() + 1);
    for (std::size_t i = 0; i <= s.size(); ++i)
      CHECK(prof[i] == doctest::Approx(m.log2_probability(s.prefix(i))).epsilon(1e-12));
  }
}

TEST_CASE("mixtures") {
  const auto mu = SemiMeasure::mixture({{WordModel::source(SymbolicSource::bernoulli_binary(0.3)), 0.5},
                                        {WordModel::source(SymbolicSource::bernoulli_binary(0.7)), 0.5}});
  CHECK(mu.value(bits("1")) == doctest::Approx(0.5));
  CHECK(mu.value(bits("11")) == doctest::Approx(0.5 * 0.09 + 0.5 * 0.49));
  CHECK(complexity_surrogate(mu, bits("1")) == doctest::Approx(1.0));

  CHECK_THROWS_AS(SemiMeasure::mixture({{WordModel::kt(), 0.7}, {WordModel::uniform(), 0.5}}), Error);
  CHECK_THROWS_AS(SemiMeasure::mixture({{WordModel::kt(), 0.0}}), Error);

  const auto pm = SemiMeasure::single(WordModel::point_mass(bits("101")));
  CHECK(pm.value(bits("101")) == 1.0);
  CHECK(pm.value(bits("100")) == 0.0);
  CHECK_THROWS_AS(complexity_surrogate(pm, bits("100")), Error);
}

TEST_CASE("length weighting") {
  const LengthWeighting lw;
  CHECK(lw.lambda(0) == doctest::Approx(0.125));
  CHECK(lw.lambda(1) == doctest::Approx(0.125));
  double total = lw.lambda(0) + lw.lambda(1);
  for (std::size_t n = 2; n < 200000; ++n) total += lw.lambda(n);
  // the log-squared tail decays slowly; the partial sum stays below one
  CHECK(total < 1.0);
  CHECK(total > 0.9);

  const auto inv = LengthWeighting::inverse_square();
  double s2 = 0;
  for (std::size_t n = 2; n < 1000000; ++n) s2 += inv.lambda(n);
  CHECK(s2 == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(inv.delta_sum() == doctest::Approx(M_PI * M_PI / 6 - 1).epsilon(1e-9));
}

TEST_CASE("default family dominates each member with its weight") {
  const auto mu = default_family();
  REQUIRE(mu.members().size() == 21);
  CHECK(mu.total_weight() <= 1.0);
  for (std::size_t k = 0; k < mu.members().size(); ++k) {
    const auto rep = dominance_check(mu, mu.member(k), mu.members()[k].weight, 8);
    CHECK(rep.pass);
    CHECK(rep.worst_ratio >= mu.members()[k].weight * (1 - 1e-12));
  }
}

TEST_CASE("dominance check finds a witness") {
  const auto mu = SemiMeasure::single(WordModel::source(SymbolicSource::bernoulli_binary(0.1)));
  const auto nu = SemiMeasure::single(WordModel::uniform());
  const auto rep = dominance_check(mu, nu, 0.5, 4);
  CHECK_FALSE(rep.pass);
  REQUIRE(rep.witness.has_value());
  CHECK(0.5 * nu.value(*rep.witness) > mu.value(*rep.witness));
}
