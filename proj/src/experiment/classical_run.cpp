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

constexpr std::uint64_t kAgreementSeedOffset = 1000003;

double entropy_rate(const SymbolicSource& source, std::uint64_t cap) {
  if (auto h = closed_form_rate(source)) return *h;
  std::size_t n = 1;
  while (n < 16 && std::pow(static_cast<double>(source.alphabet_size()), static_cast<double>(n + 1)) <=
                       static_cast<double>(std::min<std::uint64_t>(cap, 4096)))
    ++n;
  return ks_entropy_rate(source, n, cap).rate_estimate;
}

SymbolString sequence_for(const SymbolicSource& source, std::size_t n, std::uint64_t seed) {
  if (const auto* o = std::get_if<OrbitSource>(&source.model()))
    return encode_orbit(o->map, o->alpha, o->partition, o->x0, n);
  return sample_path(source, n, seed);
}

void rate_section(const CommonConfig& common, const ClassicalConfig& cfg, const SemiMeasure& mu, RunResult& out) {
  const auto& sec = *cfg.rate;
  SamplingOptions opts{cfg.cap, sec.mc_samples, common.seed};
  const auto rep = gacs_rate(*cfg.source, mu, sec.n, opts);

  report::CsvTable table({"n", "g_n", "rate", "exact", "std_error", "samples", "h"});
  report::Series series{"G_n / n", {}};
  Json rows = Json::array();
  for (const auto& p : rep.per_n) {
    const double rate = p.value / static_cast<double>(p.n);
    table.add_row({std::to_string(p.n), num(p.value), num(rate), p.exact ? "1" : "0", num(p.std_error),
                   std::to_string(p.samples), num(rep.h)});
    series.points.emplace_back(static_cast<double>(p.n), rate);
    rows.push_back({{"n", p.n}, {"g_n", p.value}, {"rate", rate}, {"exact", p.exact}, {"std_error", p.std_error}});
  }
  out.tables.emplace_back("rate", std::move(table));
  report::Chart chart{"Gacs rate", "n", "bits per symbol", {series}, {{"h", rep.h}}};
  out.charts.emplace_back("rate", report::render_svg(chart));
  out.results["rate"] = {{"per_n", rows},
                         {"endpoint", rep.rate_estimate},
                         {"h", rep.h},
                         {"h_closed_form", rep.h_closed_form},
                         {"gap", rep.gap},
                         {"rate_nonincreasing", rep.rate_nonincreasing}};
  if (sec.tolerance) {
    const double err = std::abs(rep.gap);
    add_check(out, "rate.endpoint", err <= *sec.tolerance,
              fmt::format("|G_n/n - h| = {} at n = {} (tolerance {})", num(err), rep.per_n.back().n,
                          num(*sec.tolerance)));
  }
}

void per_sequence_section(const CommonConfig& common, const ClassicalConfig& cfg, const SemiMeasure& mu, double h,
                          const RunOptions& options, RunResult& out) {
  const auto& sec = *cfg.per_sequence;
  const bool orbit = !cfg.source->stochastic();
  const std::size_t count = orbit ? 1 : sec.sequences;
  const std::size_t n_max = *std::max_element(sec.n.begin(), sec.n.end());

  std::vector<std::vector<RatePoint>> rates(count);
  parallel_for(count, options.jobs, [&](std::size_t j) {
    rates[j] = per_sequence_rate(mu, sequence_for(*cfg.source, n_max, common.seed + j), sec.n);
  });

  report::CsvTable table({"sequence", "seed", "n", "rate", "h"});
  std::vector<double> mean(sec.n.size(), 0.0);
  std::vector<double> lo(sec.n.size(), std::numeric_limits<double>::infinity());
  std::vector<double> hi(sec.n.size(), -std::numeric_limits<double>::infinity());
  for (std::size_t j = 0; j < count; ++j) {
    for (std::size_t i = 0; i < rates[j].size(); ++i) {
      const auto& p = rates[j][i];
      table.add_row({std::to_string(j), std::to_string(common.seed + j), std::to_string(p.n), num(p.rate), num(h)});
      mean[i] += p.rate / static_cast<double>(count);
      lo[i] = std::min(lo[i], p.rate);
      hi[i] = std::max(hi[i], p.rate);
    }
  }
  out.tables.emplace_back("per_sequence", std::move(table));

  report::Series s_mean{"mean", {}}, s_lo{"min", {}}, s_hi{"max", {}};
  Json summary = Json::array();
  for (std::size_t i = 0; i < sec.n.size(); ++i) {
    const double x = static_cast<double>(sec.n[i]);
    s_mean.points.emplace_back(x, mean[i]);
    s_lo.points.emplace_back(x, lo[i]);
    s_hi.points.emplace_back(x, hi[i]);
    summary.push_back({{"n", sec.n[i]}, {"mean", mean[i]}, {"min", lo[i]}, {"max", hi[i]}});
  }
  report::Chart chart{"Per-sequence rate", "n", "-log2 mu(prefix) / n", {s_mean, s_lo, s_hi}, {{"h", h}}};
  out.charts.emplace_back("per_sequence", report::render_svg(chart));

  // Fraction of sequences within tolerance at the largest n.
  const std::size_t last = static_cast<std::size_t>(
      std::distance(sec.n.begin(), std::max_element(sec.n.begin(), sec.n.end())));
  Json res = {{"sequences", count}, {"h", h}, {"per_n", summary}};
  if (sec.tolerance) {
    std::size_t within = 0;
    for (const auto& r : rates)
      if (std::abs(r[last].rate - h) <= *sec.tolerance) ++within;
    const double fraction = static_cast<double>(within) / static_cast<double>(count);
    res["within"] = within;
    res["fraction"] = fraction;
    add_check(out, "per_sequence.fraction", fraction >= sec.min_fraction,
              fmt::format("{} of {} sequences within {} of h = {} at n = {} (required fraction {})", within, count,
                          num(*sec.tolerance), num(h), n_max, num(sec.min_fraction)));
  }
  if (sec.agreement) {
    SamplingOptions opts{cfg.cap, sec.mc_samples, common.seed + kAgreementSeedOffset};
    const auto g = gacs_block_complexity(*cfg.source, mu, n_max, opts);
    const double g_rate = g.value / static_cast<double>(n_max);
    const double tol = sec.tolerance.value_or(0.05);
    const double diff = std::abs(g_rate - mean[last]);
    res["agreement"] = {{"g_rate", g_rate}, {"mean_rate", mean[last]}, {"difference", diff}};
    add_check(out, "per_sequence.agreement", diff <= tol,
              fmt::format("mean per-sequence rate {} vs G_n/n {} at n = {} (tolerance {})", num(mean[last]),
                          num(g_rate), n_max, num(tol)));
  }
  out.results["per_sequence"] = res;
}

void lemma_section(const ClassicalConfig& cfg, const SemiMeasure& mu, RunResult& out) {
  const auto member = find_source_member(mu, *cfg.source);
  if (!member) {
    out.results["lemma_bound"] = {{"applicable", false},
                                  {"reason", "the source is not a member of the family"}};
    return;
  }
  report::CsvTable table(
      {"n", "member", "g_n", "h_n", "log2_inv_weight", "log2_inv_delta", "log2_normalizer", "bound", "holds"});
  Json rows = Json::array();
  std::size_t violations = 0;
  for (auto n : cfg.lemma->n) {
    const auto c = lemma_bound_check(*cfg.source, mu, *member, n, cfg.cap);
    if (!c.holds) ++violations;
    table.add_row({std::to_string(n), std::to_string(c.member), num(c.g), num(c.h), num(c.log2_inv_weight),
                   num(c.log2_inv_delta), num(c.log2_normalizer), num(c.bound), c.holds ? "1" : "0"});
    rows.push_back({{"n", n}, {"g_n", c.g}, {"h_n", c.h}, {"bound", c.bound}, {"holds", c.holds}});
  }
  out.tables.emplace_back("lemma_bound", std::move(table));
  out.results["lemma_bound"] = {{"applicable", true}, {"member", *member}, {"per_n", rows}, {"violations", violations}};
  add_check(out, "lemma_bound", violations == 0,
            fmt::format("{} violations over {} lengths", violations, cfg.lemma->n.size()));
}

void typical_section(const ClassicalConfig& cfg, const SemiMeasure& mu, double h, RunResult& out) {
  report::CsvTable table({"n", "epsilon", "a_count", "a_mass", "a_hat_count", "a_hat_mass", "a_tilde_count",
                          "a_tilde_mass", "b_mass", "heavy_count", "alpha", "a_hat_bound", "holds"});
  Json rows = Json::array();
  std::size_t violations = 0;
  for (auto n : cfg.typical->n) {
    const auto dist = block_distribution(*cfg.source, n, cfg.cap);
    for (double eps : cfg.typical->epsilons) {
      const auto t = typical_sets(dist, h, eps, mu);
      if (!t.a_hat_bound_holds) ++violations;
      table.add_row({std::to_string(n), num(eps), std::to_string(t.a_summary.count), num(t.a_summary.mass),
                     std::to_string(t.a_hat_summary.count), num(t.a_hat_summary.mass),
                     std::to_string(t.a_tilde_summary.count), num(t.a_tilde_summary.mass), num(t.b_summary.mass),
                     std::to_string(t.heavy_count), num(t.alpha), num(t.a_hat_bound),
                     t.a_hat_bound_holds ? "1" : "0"});
      rows.push_back({{"n", n},
                      {"epsilon", eps},
                      {"a_mass", t.a_summary.mass},
                      {"a_hat_mass", t.a_hat_summary.mass},
                      {"a_tilde_mass", t.a_tilde_summary.mass},
                      {"alpha", t.alpha},
                      {"a_hat_bound", t.a_hat_bound},
                      {"holds", t.a_hat_bound_holds}});
    }
  }
  out.tables.emplace_back("typical_sets", std::move(table));
  out.results["typical_sets"] = {{"rows", rows}, {"violations", violations}};
  add_check(out, "typical_sets.a_hat_bound", violations == 0,
            fmt::format("{} violations of the mass bound on the heavy typical words", violations));
}

}  // namespace

void counting_section(const SemiMeasure& mu, const ClassicalConfig::Counting& sec, std::uint64_t cap,
                      RunResult& out) {
  const auto sweep = counting_sweep(mu, sec.n_max, sec.c_max, cap);
  report::CsvTable table({"n", "c", "count", "bound", "length_mass", "holds"});
  std::size_t violations = 0;
  double worst = 0.0;
  for (const auto& c : sweep) {
    if (!c.holds) ++violations;
    worst = std::max(worst, static_cast<double>(c.count) / c.bound);
    table.add_row({std::to_string(c.n), std::to_string(c.c), std::to_string(c.count), num(c.bound),
                   num(c.length_mass), c.holds ? "1" : "0"});
  }
  out.tables.emplace_back("counting", std::move(table));
  out.results["counting"] = {
      {"n_max", sec.n_max}, {"c_max", sec.c_max}, {"cases", sweep.size()}, {"violations", violations},
      {"max_count_over_bound", worst}};
  add_check(out, "counting", violations == 0,
            fmt::format("{} violations over {} (n, c) cases; max count / 2^c = {}", violations, sweep.size(),
                        num(worst)));
}

void run_classical(const CommonConfig& common, const ClassicalConfig& cfg, const RunOptions& options,
                   RunResult& out) {
  const SymbolicSource& source = *cfg.source;
  const SemiMeasure& mu = *cfg.family.mu;
  const double h = entropy_rate(source, cfg.cap);
  const auto closed = closed_form_rate(source);
  out.results["source"] = {{"description", source.describe()},
                           {"alphabet_size", source.alphabet_size()},
                           {"ergodic", source.ergodic()},
                           {"stochastic", source.stochastic()}};
  out.results["family"] = {{"label", cfg.family.label},
                           {"description", mu.describe()},
                           {"members", mu.members().size()},
                           {"total_weight", mu.total_weight()}};
  out.results["h"] = h;
  out.results["h_closed_form"] = closed.has_value();

  if (cfg.rate) rate_section(common, cfg, mu, out);
  if (cfg.per_sequence) per_sequence_section(common, cfg, mu, h, options, out);
  if (cfg.lemma) lemma_section(cfg, mu, out);
  if (cfg.counting) counting_section(mu, *cfg.counting, cfg.cap, out);
  if (cfg.typical) typical_section(cfg, mu, h, out);
}

}  // namespace brudno::experiment::detail
