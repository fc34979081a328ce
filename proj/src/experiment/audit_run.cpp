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

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/core.h>

#include "brudno/classical.hpp"
#include "internal.hpp"

namespace brudno::experiment::detail {
namespace {

constexpr double kMassTolerance = 1e-12;
constexpr double kMartingaleTolerance = 1e-12;

void normalization_section(const SemiMeasure& mu, std::size_t n_max, RunResult& out) {
  report::CsvTable table({"n", "mass", "allowance", "holds"});
  double total = 0.0;
  std::size_t failures = 0;
  Json rows = Json::array();
  for (std::size_t n = 0; n <= n_max; ++n) {
    double mass = 0.0;
    for_each_word(mu.alphabet_size(), n, kDefaultEnumerationCap, [&](const SymbolString& s) { mass += mu.value(s); });
    const double allowance = mu.weighting() ? mu.weighting()->lambda(n) * mu.total_weight() : mu.total_weight();
    const bool holds = mass <= allowance * (1.0 + kMassTolerance);
    if (!holds) ++failures;
    total += mass;
    table.add_row({std::to_string(n), num(mass), num(allowance), holds ? "1" : "0"});
    rows.push_back({{"n", n}, {"mass", mass}, {"allowance", allowance}});
  }
  out.tables.emplace_back("normalization", std::move(table));
  // Without length weighting each length carries the full mass, so only the
  // per-length bound applies.
  const bool total_ok = !mu.weighting() || total <= 1.0 + kMassTolerance;
  out.results["normalization"] = {{"per_n", rows}, {"total_mass", total}, {"failures", failures}};
  add_check(out, "normalization", failures == 0 && total_ok,
            fmt::format("{} lengths above their allowance; mass over lengths 0..{} = {}", failures, n_max, num(total)));
}

void martingale_section(std::size_t n_max, RunResult& out) {
  double worst_kt = 0.0, worst_mkt = 0.0;
  std::uint64_t words = 0;
  for (std::size_t n = 0; n < n_max; ++n) {
    for_each_word(2, n, kDefaultEnumerationCap, [&](const SymbolString& s) {
      SymbolString s0 = s, s1 = s;
      s0.push_back(0);
      s1.push_back(1);
      const double kt = kt_probability(s);
      const double mkt = markov_kt_probability(s);
      worst_kt = std::max(worst_kt, std::abs(kt_probability(s0) + kt_probability(s1) - kt) / kt);
      worst_mkt = std::max(worst_mkt, std::abs(markov_kt_probability(s0) + markov_kt_probability(s1) - mkt) / mkt);
      ++words;
    });
  }
  report::CsvTable table({"model", "n_max", "words", "max_relative_error"});
  table.add_row({"kt", std::to_string(n_max), std::to_string(words), num(worst_kt)});
  table.add_row({"markov-kt", std::to_string(n_max), std::to_string(words), num(worst_mkt)});
  out.tables.emplace_back("kt_martingale", std::move(table));
  out.results["kt_martingale"] = {{"words", words}, {"kt_error", worst_kt}, {"markov_kt_error", worst_mkt}};
  add_check(out, "kt_martingale", worst_kt <= kMartingaleTolerance && worst_mkt <= kMartingaleTolerance,
            fmt::format("max |P(s0) + P(s1) - P(s)| / P(s): KT {}, Markov-KT {} over {} words", num(worst_kt),
                        num(worst_mkt), words));
}

void dominance_section(const SemiMeasure& mu, std::size_t n_max, RunResult& out) {
  report::CsvTable table({"member", "model", "weight", "worst_ratio", "words", "pass", "witness"});
  std::size_t failures = 0;
  for (std::size_t k = 0; k < mu.members().size(); ++k) {
    const auto& m = mu.members()[k];
    const auto rep = dominance_check(mu, mu.member(k), m.weight, n_max);
    if (!rep.pass) ++failures;
    table.add_row({std::to_string(k), m.model.describe(), num(m.weight), num(rep.worst_ratio),
                   std::to_string(rep.words_checked), rep.pass ? "1" : "0",
                   rep.witness ? rep.witness->to_string() : ""});
  }
  out.tables.emplace_back("dominance", std::move(table));
  out.results["dominance"] = {{"members", mu.members().size()}, {"n_max", n_max}, {"failures", failures}};
  add_check(out, "dominance", failures == 0,
            fmt::format("{} of {} members not dominated with their weight for n <= {}", failures,
                        mu.members().size(), n_max));
}

void redundancy_section(std::uint64_t seed, const AuditConfig::Redundancy& sec, const RunOptions& options,
                        RunResult& out) {
  const SymbolicSource source = SymbolicSource::bernoulli_binary(sec.p_one);
  const WordModel kt = WordModel::kt(2);
  const std::size_t n_max = *std::max_element(sec.n.begin(), sec.n.end());
  struct Row {
    std::vector<double> redundancy;
  };
  std::vector<Row> rows(sec.samples);
  parallel_for(sec.samples, options.jobs, [&](std::size_t j) {
    const SymbolString path = sample_path(source, n_max, seed + j);
    for (auto n : sec.n) {
      const SymbolString s = path.prefix(n);
      rows[j].redundancy.push_back(-kt.log2_probability(s) + log2_word_probability(source, s));
    }
  });
  report::CsvTable table({"n", "samples", "max_redundancy", "mean_redundancy", "bound", "violations"});
  std::size_t violations = 0;
  Json res = Json::array();
  for (std::size_t i = 0; i < sec.n.size(); ++i) {
    const double bound = std::log2(static_cast<double>(sec.n[i])) + 2.0;
    double worst = -std::numeric_limits<double>::infinity(), mean = 0.0;
    std::size_t v = 0;
    for (const auto& r : rows) {
      worst = std::max(worst, r.redundancy[i]);
      mean += r.redundancy[i] / static_cast<double>(rows.size());
      if (r.redundancy[i] > bound) ++v;
    }
    violations += v;
    table.add_row({std::to_string(sec.n[i]), std::to_string(sec.samples), num(worst), num(mean), num(bound),
                   std::to_string(v)});
    res.push_back({{"n", sec.n[i]}, {"max", worst}, {"mean", mean}, {"bound", bound}});
  }
  out.tables.emplace_back("kt_redundancy", std::move(table));
  out.results["kt_redundancy"] = {{"p_one", sec.p_one}, {"per_n", res}, {"violations", violations}};
  add_check(out, "kt_redundancy", violations == 0,
            fmt::format("{} samples with -log2 KT(s) > -log2 P(s) + log2 n + 2", violations));
}

}  // namespace

void run_audit(const CommonConfig& common, const AuditConfig& cfg, const RunOptions& options, RunResult& out) {
  const SemiMeasure& mu = *cfg.family.mu;
  out.results["family"] = {{"label", cfg.family.label},
                           {"description", mu.describe()},
                           {"members", mu.members().size()},
                           {"total_weight", mu.total_weight()}};
  if (cfg.normalization_n_max) normalization_section(mu, *cfg.normalization_n_max, out);
  if (cfg.martingale_n_max) martingale_section(*cfg.martingale_n_max, out);
  if (cfg.dominance_n_max) dominance_section(mu, *cfg.dominance_n_max, out);
  if (cfg.counting) counting_section(mu, *cfg.counting, kDefaultEnumerationCap, out);
  if (cfg.redundancy) redundancy_section(common.seed, *cfg.redundancy, options, out);
}

}  // namespace brudno::experiment::detail
