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

#include <random>
#include <set>

#include <fmt/core.h>

#include "brudno/error.hpp"
#include "brudno/godel.hpp"
#include "internal.hpp"

namespace brudno::experiment::detail {
namespace {

using godel::Natural;

std::string flag(bool b) { return b ? "1" : "0"; }

void tau_section(unsigned max_length, RunResult& out) {
  const std::vector<std::pair<std::string, std::uint64_t>> examples = {
      {"", 0}, {"0", 1}, {"1", 2}, {"00", 3}, {"01", 4}, {"11", 6}, {"000", 7}};
  std::size_t example_fail = 0;
  for (const auto& [s, want] : examples)
    if (godel::string_to_index(SymbolString::parse(s)) != want) ++example_fail;

  // Length-lexicographic enumeration must hit 0, 1, 2, ... in order.
  std::uint64_t expected = 0;
  std::size_t failures = 0;
  for (unsigned len = 0; len <= max_length; ++len) {
    const std::uint64_t count = std::uint64_t{1} << len;
    for (std::uint64_t code = 0; code < count; ++code, ++expected) {
      const SymbolString s = word_from_code(code, len, 2);
      const std::uint64_t idx = godel::string_to_index(s);
      if (idx != expected || godel::index_to_string(idx) != s) ++failures;
    }
  }
  report::CsvTable table({"max_length", "strings", "failures", "example_failures"});
  table.add_row({std::to_string(max_length), std::to_string(expected), std::to_string(failures),
                 std::to_string(example_fail)});
  out.tables.emplace_back("tau", std::move(table));
  out.results["tau"] = {{"max_length", max_length}, {"strings", expected}, {"failures", failures},
                        {"example_failures", example_fail}};
  add_check(out, "tau.examples", example_fail == 0, fmt::format("{} of {} examples wrong", example_fail, examples.size()));
  add_check(out, "tau.bijection", failures == 0,
            fmt::format("{} failures over all {} strings of length <= {}", failures, expected, max_length));
}

void pairing_section(std::uint64_t limit, RunResult& out) {
  std::size_t failures = 0;
  std::uint64_t pairs_checked = 0;
  // unpair then pair over every N below the limit
  for (std::uint64_t n = 0; n < limit; ++n) {
    const auto [p, q] = godel::unpair(Natural(n));
    if (godel::pair(p, q) != n) ++failures;
  }
  // pair then unpair over every (p, q) whose code lies below the limit
  std::set<std::uint64_t> seen;
  for (std::uint64_t p = 0; (std::uint64_t{1} << p) <= limit && p < 64; ++p) {
    for (std::uint64_t q = 0;; ++q) {
      const Natural v = godel::pair(Natural(p), Natural(q));
      if (v >= limit) break;
      ++pairs_checked;
      const auto back = godel::unpair(v);
      if (back.first != p || back.second != q) ++failures;
      seen.insert(v.convert_to<std::uint64_t>());
    }
  }
  const bool onto = seen.size() == limit && pairs_checked == limit && (limit == 0 || *seen.rbegin() == limit - 1);

  const bool examples = godel::pair(0, 0) == 0 && godel::pair(2, 1) == 11 && godel::pair(0, 11) == 22 &&
                        godel::unpair(Natural(22)) == std::pair<Natural, Natural>(0, 11);
  report::CsvTable table({"limit", "pairs", "failures", "onto"});
  table.add_row({std::to_string(limit), std::to_string(pairs_checked), std::to_string(failures), flag(onto)});
  out.tables.emplace_back("pairing", std::move(table));
  out.results["pairing"] = {{"limit", limit}, {"pairs", pairs_checked}, {"failures", failures}, {"onto", onto}};
  add_check(out, "pairing.examples", examples, "<0,0> = 0, <2,1> = 11, <0,11> = 22");
  add_check(out, "pairing.round_trip", failures == 0 && onto,
            fmt::format("{} failures; codes of the {} pairs cover 0..{} exactly: {}", failures, pairs_checked,
                        limit - 1, onto ? "yes" : "no"));
}

void integer_section(std::int64_t range, RunResult& out) {
  using godel::Integer;
  const std::vector<std::pair<std::int64_t, unsigned>> examples = {{2, 22}, {-1, 21}, {0, 0}, {1, 10}, {-2, 45}};
  std::string shown;
  bool examples_ok = true;
  for (const auto& [z, want] : examples) {
    const Natural got = godel::int_to_nat(Integer(z));
    if (got != want) examples_ok = false;
    shown += fmt::format("{}f({}) = {}", shown.empty() ? "" : ", ", z, got.str());
  }
  std::size_t failures = 0;
  std::set<Natural> codes;
  for (std::int64_t z = -range; z <= range; ++z) {
    const Natural code = godel::int_to_nat(Integer(z));
    const auto back = godel::nat_to_int(code);
    if (!back || *back != z) ++failures;
    codes.insert(code);
  }
  const std::size_t count = static_cast<std::size_t>(2 * range + 1);
  const bool injective = codes.size() == count;
  report::CsvTable table({"range", "integers", "failures", "injective"});
  table.add_row({std::to_string(range), std::to_string(count), std::to_string(failures), flag(injective)});
  out.tables.emplace_back("integers", std::move(table));
  out.results["integers"] = {{"range", range}, {"failures", failures}, {"injective", injective}, {"examples", shown}};
  add_check(out, "integers.examples", examples_ok, shown);
  add_check(out, "integers.round_trip", failures == 0 && injective,
            fmt::format("{} failures over [{}, {}]; injective: {}", failures, -range, range, injective ? "yes" : "no"));
}

godel::AlgebraicNumberSpec random_algebraic(std::mt19937_64& rng, unsigned max_degree, std::int64_t max_coefficient) {
  std::uniform_int_distribution<unsigned> deg(1, max_degree);
  std::uniform_int_distribution<std::int64_t> coef(-max_coefficient, max_coefficient);
  godel::AlgebraicNumberSpec a;
  const unsigned d = deg(rng);
  a.coefficients.resize(d + 1);
  do a.coefficients[0] = coef(rng);
  while (a.coefficients[0] == 0);
  for (unsigned i = 1; i <= d; ++i) a.coefficients[i] = coef(rng);
  a.root_index = std::uniform_int_distribution<std::uint64_t>(0, d - 1)(rng);
  return a;
}

void algebraic_section(std::uint64_t seed, const SelftestConfig::Algebraic& sec, RunResult& out) {
  const godel::AlgebraicNumberSpec example{{2, 0, -1}, 1};
  const auto ex = godel::encode_algebraic(example);
  const std::vector<Natural> want = {2, 22, 0, 21, 1};
  const bool example_ok = ex.prime_exponents == want;

  std::mt19937_64 rng(seed);
  std::size_t failures = 0;
  std::set<std::vector<Natural>> codes;
  std::set<std::pair<std::vector<std::int64_t>, std::uint64_t>> specs;
  for (std::size_t k = 0; k < sec.samples; ++k) {
    const auto a = random_algebraic(rng, sec.max_degree, sec.max_coefficient);
    const auto code = godel::encode_algebraic(a);
    if (godel::decode_algebraic(code) != a) ++failures;
    codes.insert(code.prime_exponents);
    specs.insert({a.coefficients, a.root_index});
  }
  const bool injective = codes.size() == specs.size();
  std::string ex_text;
  for (const auto& e : ex.prime_exponents) ex_text += (ex_text.empty() ? "" : ", ") + e.str();
  report::CsvTable table({"samples", "max_degree", "max_coefficient", "failures", "injective"});
  table.add_row({std::to_string(sec.samples), std::to_string(sec.max_degree), std::to_string(sec.max_coefficient),
                 std::to_string(failures), flag(injective)});
  out.tables.emplace_back("algebraic", std::move(table));
  out.results["algebraic"] = {
      {"samples", sec.samples}, {"failures", failures}, {"injective", injective}, {"example", "[" + ex_text + "]"}};
  add_check(out, "algebraic.example", example_ok,
            fmt::format("root 1 of 2z^2 - 1 encodes as exponents [{}]", ex_text));
  add_check(out, "algebraic.round_trip", failures == 0 && injective,
            fmt::format("{} failures over {} random specs; injective: {}", failures, sec.samples,
                        injective ? "yes" : "no"));
}

void elementary_section(std::uint64_t seed, const SelftestConfig::Elementary& sec, RunResult& out) {
  // (|00> + |11>) / sqrt 2, with 1/sqrt 2 the larger root of 2z^2 - 1
  const godel::AlgebraicNumberSpec half_root{{2, 0, -1}, 1};
  const godel::ElementaryVector bell = {{SymbolString::parse("00"), half_root}, {SymbolString::parse("11"), half_root}};
  const auto bell_code = godel::encode_elementary_vector(bell);
  const bool bell_ok = bell_code.code.top_index == 6 && godel::decode_elementary_vector(bell_code.code) == bell;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> terms(1, sec.max_terms);
  std::uniform_int_distribution<std::size_t> len(0, sec.max_length);
  std::size_t failures = 0;
  std::vector<std::pair<godel::ElementaryVector, godel::ElementaryCode>> seen;
  for (std::size_t k = 0; k < sec.samples; ++k) {
    godel::ElementaryVector psi;
    const std::size_t t = terms(rng);
    for (std::size_t i = 0; i < t; ++i) {
      const std::size_t l = len(rng);
      const std::uint64_t code = l == 0 ? 0 : std::uniform_int_distribution<std::uint64_t>(0, (1u << l) - 1)(rng);
      psi[word_from_code(code, l, 2)] = random_algebraic(rng, 4, 20);
    }
    const auto enc = godel::encode_elementary_vector(psi);
    if (godel::decode_elementary_vector(enc.code) != psi) ++failures;
    seen.emplace_back(std::move(psi), enc.code);
  }
  bool injective = true;
  for (std::size_t i = 0; i < seen.size(); ++i)
    for (std::size_t j = i + 1; j < seen.size(); ++j)
      if (seen[i].first != seen[j].first && seen[i].second == seen[j].second) injective = false;
  report::CsvTable table({"samples", "max_terms", "max_length", "failures", "injective"});
  table.add_row({std::to_string(sec.samples), std::to_string(sec.max_terms), std::to_string(sec.max_length),
                 std::to_string(failures), flag(injective)});
  out.tables.emplace_back("elementary", std::move(table));
  out.results["elementary"] = {{"samples", sec.samples},
                               {"failures", failures},
                               {"injective", injective},
                               {"bell_top_index", bell_code.code.top_index.str()},
                               {"bell_value_bits", bell_code.value ? Json(msb(*bell_code.value) + 1) : Json(nullptr)}};
  add_check(out, "elementary.bell", bell_ok, "Bell vector encodes with top index 6 and decodes back");
  add_check(out, "elementary.round_trip", failures == 0 && injective,
            fmt::format("{} failures over {} random vectors; injective: {}", failures, sec.samples,
                        injective ? "yes" : "no"));
}

}  // namespace

void run_selftest(const CommonConfig& common, const SelftestConfig& cfg, const RunOptions&, RunResult& out) {
  if (cfg.tau_max_length) tau_section(*cfg.tau_max_length, out);
  if (cfg.pairing_limit) pairing_section(*cfg.pairing_limit, out);
  if (cfg.integer_range) integer_section(*cfg.integer_range, out);
  if (cfg.algebraic) algebraic_section(common.seed, *cfg.algebraic, out);
  if (cfg.elementary) elementary_section(common.seed + 1, *cfg.elementary, out);
}

}  // namespace brudno::experiment::detail
