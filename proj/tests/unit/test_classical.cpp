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

#include "brudno/classical.hpp"
#include "brudno/error.hpp"
#include "doctest.h"

using namespace brudno;

TEST_CASE("fair coin against the uniform measure has rate exactly one") {
  const auto src = SymbolicSource::bernoulli_binary(0.5);
  const auto mu = SemiMeasure::single(WordModel::uniform());
  for (std::size_t n : {4, 10, 16}) {
    const auto g = gacs_block_complexity(src, mu, n);
    CHECK(g.exact);
    CHECK(g.value / n == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("fair coin under the default family") {
  const auto rep = gacs_rate(SymbolicSource::bernoulli_binary(0.5), default_family(), {256, 4096});
  // the overhead log2(1/w) + log2(1/lambda(n)) is about 28 bits, so 0.02 needs n well above 1024
  CHECK(std::abs(rep.rate_estimate - 1.0) <= 0.02);
  CHECK(rep.h == 1.0);
}

TEST_CASE("Bernoulli 0.3 rate at n = 1024") {
  SamplingOptions opt;
  opt.samples = 200;
  opt.seed = 11;
  const auto g = gacs_block_complexity(SymbolicSource::bernoulli_binary(0.3), default_family(), 1024, opt);
  CHECK_FALSE(g.exact);
  CHECK(g.value / 1024 >= 0.88);
  CHECK(g.value / 1024 <= 0.93);
}

TEST_CASE("non-ergodic sources are rejected") {
  const auto reducible = SymbolicSource::markov((Eigen::MatrixXd(2, 2) << 1.0, 0.0, 0.0, 1.0).finished());
  CHECK_THROWS_AS(gacs_rate(reducible, default_family(), {8}), Error);
}

TEST_CASE("per-sequence rates") {
  const auto mu = SemiMeasure::single(WordModel::uniform());
  const auto s = sample_path(SymbolicSource::bernoulli_binary(0.3), 64, 3);
  for (const auto& p : per_sequence_rate(mu, s, {8, 32, 64})) CHECK(p.rate == doctest::Approx(1.0));
}

TEST_CASE("lemma bound for a member source") {
  const auto src = SymbolicSource::bernoulli_binary(0.3);
  const auto mu = default_family();
  const auto k = find_source_member(mu, src);
  REQUIRE(k.has_value());
  CHECK_FALSE(find_source_member(mu, SymbolicSource::bernoulli_binary(0.33)).has_value());
  for (std::size_t n = 2; n <= 12; ++n) {
    const auto c = lemma_bound_check(src, mu, *k, n);
    CHECK(c.holds);
    CHECK(c.g <= c.bound);
    CHECK(c.h == doctest::Approx(n * binary_entropy(0.3)).epsilon(1e-9));
  }
}

TEST_CASE("counting bound") {
  const auto kt = SemiMeasure::single(WordModel::kt());
  const auto c = counting_bound_check(kt, 3, 4);
  // KT on length 4: only 0000 and 1111 reach 1/8 (35/128 each)
  CHECK(c.count == 2);
  CHECK(c.holds);
  CHECK(c.length_mass == doctest::Approx(1.0));

  for (const auto& r : counting_sweep(default_family(), 10, 12)) {
    CHECK(r.holds);
    CHECK(static_cast<double>(r.count) <= r.bound);
  }
}

TEST_CASE("typical sets") {
  const auto src = SymbolicSource::bernoulli_binary(0.3);
  const auto dist = block_distribution(src, 12);
  const double h = binary_entropy(0.3);
  const auto ts = typical_sets(dist, h, 0.1, default_family());
  CHECK(ts.a.size() == ts.a_summary.count);
  CHECK(ts.a_hat.size() + ts.a_tilde.size() <= (std::uint64_t{1} << 12));
  CHECK(ts.a_hat_summary.mass <= ts.a_summary.mass + 1e-12);
  CHECK(ts.a_hat_bound_holds);
  for (auto code : ts.a) {
    const double p = dist.probabilities[code];
    CHECK(p >= std::exp2(-12 * (h + 0.1)) * (1 - 1e-12));
    CHECK(p <= std::exp2(-12 * (h - 0.1)) * (1 + 1e-12));
  }
}
