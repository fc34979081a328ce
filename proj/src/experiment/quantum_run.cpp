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
#include <map>
#include <random>
#include <set>

#include <fmt/core.h>

#include "brudno/error.hpp"
#include "brudno/linalg.hpp"
#include "brudno/typicality.hpp"
#include "internal.hpp"

namespace brudno::experiment::detail {
namespace {

constexpr double kCompatibilityTolerance = 1e-10;
constexpr double kMarginTolerance = 1e-10;
constexpr double kBoundTolerance = 1e-9;
constexpr double kExampleTolerance = 1e-9;
constexpr double kUnitarityTolerance = 1e-10;

std::string flag(bool b) { return b ? "1" : "0"; }

Json item_json(const BrudnoQuantumReport& r) {
  Json j = {{"n", r.n},
            {"epsilon", r.epsilon},
            {"s", r.s},
            {"a_count", r.a_count},
            {"b_complement", r.b_complement},
            {"alpha", r.alpha_vacuous ? Json(nullptr) : Json(r.alpha)},
            {"alpha_vacuous", r.alpha_vacuous},
            {"degenerate", r.degenerate},
            {"item1", {{"measured", r.item1.measured}, {"bound", r.item1.bound}, {"pass", r.item1.pass}}},
            {"item2",
             {{"dim", r.item2.dim},
              {"lower", r.item2.lower},
              {"lower_plain", r.item2.lower_plain},
              {"upper", r.item2.upper},
              {"pass", r.item2.pass}}},
            {"item3",
             {{"checked", r.item3.checked},
              {"lower", r.item3.lower},
              {"upper", r.item3.upper},
              {"min", r.item3.min_value},
              {"max", r.item3.max_value},
              {"failures", r.item3.failures},
              {"pass", r.item3.pass}}}};
  if (r.item4) {
    const auto& i = *r.item4;
    j["item4"] = {{"checked", i.checked},
                  {"weight", i.weight},
                  {"alpha_plus", i.alpha_plus},
                  {"slack", i.slack},
                  {"band_lower", i.band_lower},
                  {"band_upper", i.band_upper},
                  {"min", i.min_value},
                  {"max", i.max_value},
                  {"mean", i.mean_value},
                  {"extreme_high_r", i.extreme_high_r},
                  {"extreme_low_r", i.extreme_low_r},
                  {"failures", i.failures},
                  {"pass", i.pass}};
  }
  return j;
}

// Items 1-3 and item 4 share rho^(n) and mu^(n); they are realized once per
// n and dropped before the next n.
void typicality_sections(const CommonConfig& common, const QuantumConfig& cfg, RunResult& out) {
  const ChainState& state = *cfg.state;
  const UniversalSemiDensity& family = *cfg.family;
  const double s = state.closed_form_entropy_rate();
  std::set<unsigned> all_n;
  if (cfg.items) all_n.insert(cfg.items->n.begin(), cfg.items->n.end());
  if (cfg.item4) all_n.insert(cfg.item4->n.begin(), cfg.item4->n.end());
  const std::optional<double> w = cfg.item4 ? member_weight(family, state) : std::nullopt;

  std::vector<BrudnoQuantumReport> items, item4;
  for (unsigned n : all_n) {
    const LocalDensityMatrix rho = local_density(state, n, cfg.site_cap);
    const RealizedUniversal mu = family.realize(n, cfg.site_cap, &rho);
    auto wants = [n](const std::vector<unsigned>& grid) {
      return std::find(grid.begin(), grid.end(), n) != grid.end();
    };
    if (cfg.items && wants(cfg.items->n)) {
      for (double eps : cfg.items->epsilons) {
        QuantumCheckOptions opts{cfg.items->samples, common.seed, cfg.site_cap, false};
        items.push_back(check_typicality(rho, mu, s, std::nullopt, eps, opts));
      }
    }
    if (cfg.item4 && wants(cfg.item4->n)) {
      for (double eps : cfg.item4->epsilons) {
        QuantumCheckOptions opts{cfg.item4->samples, common.seed, cfg.site_cap, true};
        item4.push_back(check_typicality(rho, mu, s, w, eps, opts));
      }
    }
  }

  if (cfg.items) {
    report::CsvTable table({"n", "epsilon", "s", "a_count", "b_complement", "alpha", "degenerate", "item1_measured",
                            "item1_bound", "item1_pass", "item2_dim", "item2_lower", "item2_lower_plain",
                            "item2_upper", "item2_pass", "item3_checked", "item3_lower", "item3_upper", "item3_min",
                            "item3_max", "item3_failures", "item3_pass"});
    Json rows = Json::array();
    std::size_t f1 = 0, f2 = 0, f3 = 0, degenerate = 0;
    std::string worst1;
    for (const auto& r : items) {
      table.add_row({std::to_string(r.n), num(r.epsilon), num(r.s), std::to_string(r.a_count),
                     std::to_string(r.b_complement),
                     r.alpha_vacuous ? "-inf" : num(r.alpha), flag(r.degenerate), num(r.item1.measured),
                     num(r.item1.bound), flag(r.item1.pass), std::to_string(r.item2.dim), num(r.item2.lower),
                     num(r.item2.lower_plain), num(r.item2.upper), flag(r.item2.pass),
                     std::to_string(r.item3.checked), num(r.item3.lower), num(r.item3.upper),
                     num(r.item3.min_value), num(r.item3.max_value), std::to_string(r.item3.failures),
                     flag(r.item3.pass)});
      rows.push_back(item_json(r));
      if (r.degenerate) ++degenerate;
      if (!r.item1.pass) {
        ++f1;
        if (worst1.empty())
          worst1 = fmt::format("; first failure n = {}, eps = {}: Tr(rho p) = {} < {}", r.n, num(r.epsilon),
                               num(r.item1.measured), num(r.item1.bound));
      }
      if (!r.item2.pass) ++f2;
      if (!r.item3.pass) ++f3;
    }
    out.tables.emplace_back("items", std::move(table));
    out.results["items"] = {{"rows", rows}, {"degenerate", degenerate}};
    const std::size_t total = items.size();
    add_check(out, "items.item1", f1 == 0,
              fmt::format("{} of {} (n, eps) cases below the probability bound{}", f1, total, worst1));
    add_check(out, "items.item2", f2 == 0, fmt::format("{} of {} cases outside the dimension sandwich", f2, total));
    add_check(out, "items.item3", f3 == 0,
              fmt::format("{} of {} cases with a minimal projection outside the sandwich ({} degenerate)", f3, total,
                          degenerate));
  }

  if (cfg.item4) {
    report::CsvTable table({"n", "epsilon", "s", "alpha", "alpha_plus", "weight", "slack", "band_lower",
                            "band_upper", "checked", "min", "max", "mean", "extreme_high_r", "extreme_low_r",
                            "failures", "pass", "degenerate"});
    Json rows = Json::array();
    std::size_t failures = 0, degenerate = 0;
    std::map<double, std::vector<std::pair<unsigned, double>>> slack_by_eps;
    std::vector<report::Series> series;
    std::map<double, std::size_t> series_index;
    for (const auto& r : item4) {
      rows.push_back(item_json(r));
      if (r.degenerate) {
        ++degenerate;
        table.add_row({std::to_string(r.n), num(r.epsilon), num(r.s), "", "", "", "", "", "", "0", "", "", "", "", "",
                       "0", "", "1"});
        continue;
      }
      const auto& i = *r.item4;
      if (!i.pass) ++failures;
      slack_by_eps[r.epsilon].emplace_back(r.n, i.slack);
      table.add_row({std::to_string(r.n), num(r.epsilon), num(r.s), r.alpha_vacuous ? "-inf" : num(r.alpha),
                     num(i.alpha_plus), num(i.weight), num(i.slack), num(i.band_lower), num(i.band_upper),
                     std::to_string(i.checked), num(i.min_value), num(i.max_value), num(i.mean_value),
                     num(i.extreme_high_r), num(i.extreme_low_r), std::to_string(i.failures), flag(i.pass), "0"});
      if (!series_index.count(r.epsilon)) {
        series_index[r.epsilon] = series.size();
        const std::string e = num(r.epsilon);
        series.push_back({"mean eps=" + e, {}});
        series.push_back({"band low eps=" + e, {}});
        series.push_back({"band high eps=" + e, {}});
      }
      const std::size_t k = series_index[r.epsilon];
      series[k].points.emplace_back(r.n, i.mean_value);
      series[k + 1].points.emplace_back(r.n, i.band_lower);
      series[k + 2].points.emplace_back(r.n, i.band_upper);
    }
    out.tables.emplace_back("item4", std::move(table));
    report::Chart chart{"Universal weight rate on the typical subspace", "n", "-(1/n) log2 <psi|mu|psi>", series,
                        {{"s", s}}};
    out.charts.emplace_back("item4", report::render_svg(chart));
    out.results["item4"] = {{"rows", rows}, {"degenerate", degenerate}, {"weight", w.value_or(0.0)}};

    const std::size_t checked = item4.size() - degenerate;
    add_check(out, "item4.band", failures == 0 && checked > 0,
              fmt::format("{} of {} non-degenerate (n, eps) cases outside the band; {} degenerate", failures, checked,
                          degenerate));
    bool trend = true;
    std::string trend_detail;
    bool final_ok = true;
    std::string final_detail;
    for (const auto& [eps, pts] : slack_by_eps) {
      for (std::size_t k = 1; k < pts.size(); ++k)
        if (pts[k].second > pts[k - 1].second + kBoundTolerance) trend = false;
      std::string seq;
      for (const auto& [n, sl] : pts) seq += fmt::format("{}{}:{}", seq.empty() ? "" : ", ", n, num(sl));
      trend_detail += fmt::format("{}eps = {}: {}", trend_detail.empty() ? "" : "; ", num(eps), seq);
      if (cfg.item4->max_final_slack && !pts.empty()) {
        const auto& last = pts.back();
        if (last.second > *cfg.item4->max_final_slack) final_ok = false;
        final_detail += fmt::format("{}slack {} at n = {} (eps = {})", final_detail.empty() ? "" : "; ",
                                    num(last.second), last.first, num(eps));
      }
    }
    add_check(out, "item4.slack_trend", trend && !slack_by_eps.empty(), "slack by n: " + trend_detail);
    if (cfg.item4->max_final_slack)
      add_check(out, "item4.final_slack", final_ok && !slack_by_eps.empty(),
                fmt::format("{} (limit {})", final_detail, num(*cfg.item4->max_final_slack)));
  }
}

void entropy_section(const QuantumConfig& cfg, RunResult& out) {
  const auto rep = entropy_rate(*cfg.state, cfg.entropy_rate->n_max, cfg.site_cap);
  report::CsvTable table({"n", "entropy", "rate", "closed_form"});
  report::Series series{"S(rho_n) / n", {}};
  Json rows = Json::array();
  for (const auto& p : rep.per_n) {
    table.add_row({std::to_string(p.n), num(p.entropy), num(p.rate), num(rep.closed_form)});
    series.points.emplace_back(p.n, p.rate);
    rows.push_back({{"n", p.n}, {"entropy", p.entropy}, {"rate", p.rate}});
  }
  out.tables.emplace_back("entropy_rate", std::move(table));
  report::Chart chart{"Entropy rate", "n", "bits per site", {series}, {{"closed form", rep.closed_form}}};
  out.charts.emplace_back("entropy_rate", report::render_svg(chart));
  out.results["entropy_rate"] = {
      {"per_n", rows}, {"rate", rep.rate}, {"closed_form", rep.closed_form}, {"product", rep.product},
      {"additive", rep.additive}};
  if (rep.product)
    add_check(out, "entropy_rate.additive", rep.additive,
              fmt::format("S(rho_n) = n S(rho_1) for n <= {}; rate {} vs closed form {}", cfg.entropy_rate->n_max,
                          num(rep.rate), num(rep.closed_form)));
}

void compatibility_section(const QuantumConfig& cfg, RunResult& out) {
  report::CsvTable table({"n", "error_first", "error_last"});
  double worst = 0.0;
  std::optional<LocalDensityMatrix> smaller;
  for (unsigned n = 1; n <= cfg.compatibility->n_max + 1; ++n) {
    LocalDensityMatrix rho = local_density(*cfg.state, n, cfg.site_cap);
    if (smaller) {
      const double e_first = linalg::max_abs_diff(partial_trace(rho, TraceEnd::First).matrix(), smaller->matrix());
      const double e_last = linalg::max_abs_diff(partial_trace(rho, TraceEnd::Last).matrix(), smaller->matrix());
      worst = std::max({worst, e_first, e_last});
      table.add_row({std::to_string(n - 1), num(e_first), num(e_last)});
    }
    smaller.emplace(std::move(rho));
  }
  out.tables.emplace_back("compatibility", std::move(table));
  out.results["compatibility"] = {{"n_max", cfg.compatibility->n_max}, {"max_error", worst}};
  add_check(out, "compatibility", worst <= kCompatibilityTolerance,
            fmt::format("max |Tr_end rho_(n+1) - rho_n| = {} for n <= {} (tolerance {})", num(worst),
                        cfg.compatibility->n_max, num(kCompatibilityTolerance)));
}

void gacs_inequality_section(const CommonConfig& common, const QuantumConfig& cfg, const RunOptions& options,
                             RunResult& out) {
  const auto& sec = *cfg.gacs_inequality;
  const unsigned dims = sec.dim_max - sec.dim_min + 1;
  struct Row {
    double min_gap = std::numeric_limits<double>::infinity();
    std::size_t violations = 0;
  };
  std::vector<Row> rows(dims);
  parallel_for(dims, options.jobs, [&](std::size_t d) {
    const unsigned dim = sec.dim_min + static_cast<unsigned>(d);
    std::mt19937_64 rng(common.seed * 1000003ULL + dim);
    std::uniform_real_distribution<double> scale(0.25, 1.0);
    for (std::size_t k = 0; k < sec.pairs; ++k) {
      const linalg::Matrix rho = linalg::random_density(dim, rng);
      const linalg::Matrix mu = linalg::random_density(dim, rng) * scale(rng);
      const double upper = gacs_upper(rho, linalg::canonical_spectrum(mu));
      const double lower = gacs_lower(rho, mu);
      const double gap = upper - lower;
      rows[d].min_gap = std::min(rows[d].min_gap, gap);
      if (gap < -kBoundTolerance) ++rows[d].violations;
    }
  });
  report::CsvTable table({"dim", "pairs", "min_gap", "violations"});
  std::size_t violations = 0;
  double min_gap = std::numeric_limits<double>::infinity();
  for (unsigned d = 0; d < dims; ++d) {
    table.add_row({std::to_string(sec.dim_min + d), std::to_string(sec.pairs), num(rows[d].min_gap),
                   std::to_string(rows[d].violations)});
    violations += rows[d].violations;
    min_gap = std::min(min_gap, rows[d].min_gap);
  }
  out.tables.emplace_back("gacs_inequality", std::move(table));

  // mu = diag(1/2, 1/4, 1/8, 1/16), rho = I/4
  linalg::Matrix mu = linalg::Matrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) mu(i, i) = std::exp2(-(i + 1));
  const linalg::Matrix rho = linalg::Matrix::Identity(4, 4) * 0.25;
  const double ex_upper = gacs_upper(rho, linalg::canonical_spectrum(mu));
  const double ex_lower = gacs_lower(rho, mu);
  const double want_lower = -std::log2(15.0 / 64.0);
  const bool ex_ok = std::abs(ex_upper - 2.5) <= kExampleTolerance && std::abs(ex_lower - want_lower) <= kExampleTolerance;

  out.results["gacs_inequality"] = {{"dims", {sec.dim_min, sec.dim_max}},
                                    {"pairs_per_dim", sec.pairs},
                                    {"violations", violations},
                                    {"min_gap", min_gap},
                                    {"example", {{"upper", ex_upper}, {"lower", ex_lower}}}};
  add_check(out, "gacs_inequality.random", violations == 0,
            fmt::format("{} violations over {} pairs per dimension {}..{}; min upper - lower = {}", violations,
                        sec.pairs, sec.dim_min, sec.dim_max, num(min_gap)));
  add_check(out, "gacs_inequality.example", ex_ok,
            fmt::format("upper {} (expected 2.5), lower {} (expected {})", num(ex_upper), num(ex_lower),
                        num(want_lower)));
}

void dominance_section(const QuantumConfig& cfg, RunResult& out) {
  const UniversalSemiDensity& family = *cfg.family;
  report::CsvTable table({"n", "member", "weight", "margin", "gacs_upper", "entropy", "bound", "holds"});
  std::size_t margin_fail = 0, bound_fail = 0, cases = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (unsigned n = 1; n <= cfg.dominance->n_max; ++n) {
    const RealizedUniversal mu = family.realize(n, cfg.site_cap);
    for (std::size_t k = 0; k < family.members().size(); ++k) {
      const auto& m = family.members()[k];
      const LocalDensityMatrix rho = local_density(m.state, n, cfg.site_cap);
      const double margin = dominance_margin(mu.matrix, rho.matrix(), m.weight);
      const double upper = gacs_upper(rho.matrix(), mu.spectrum);
      const double entropy = von_neumann_entropy(rho);
      const double bound = entropy + std::log2(1.0 / m.weight);
      const bool holds = upper <= bound + kBoundTolerance;
      ++cases;
      if (margin < -kMarginTolerance) ++margin_fail;
      if (!holds) ++bound_fail;
      worst_margin = std::min(worst_margin, margin);
      table.add_row({std::to_string(n), std::to_string(k), num(m.weight), num(margin), num(upper), num(entropy),
                     num(bound), flag(holds)});
    }
  }
  out.tables.emplace_back("dominance", std::move(table));
  out.results["dominance"] = {{"n_max", cfg.dominance->n_max},
                              {"cases", cases},
                              {"min_margin", worst_margin},
                              {"margin_failures", margin_fail},
                              {"bound_failures", bound_fail}};
  add_check(out, "dominance.margin", margin_fail == 0 && cases > 0,
            fmt::format("min eigenvalue of mu - w rho = {} over {} cases", num(worst_margin), cases));
  add_check(out, "dominance.entropy_bound", bound_fail == 0 && cases > 0,
            fmt::format("{} of {} cases with -Tr(rho log2 mu) > S(rho) + log2(1/w)", bound_fail, cases));
}

void quasi_section(const QuantumConfig& cfg, RunResult& out) {
  const auto& sec = *cfg.quasi;
  const linalg::Matrix base = local_density(*cfg.state, sec.n_base, cfg.site_cap).matrix();
  std::vector<SemiDensityMatrix> seq, reversed;
  for (unsigned j = 1; j <= sec.steps; ++j) {
    const unsigned sites = sec.n_base + j - 1;
    seq.emplace_back(sites, embed(base, sec.n_base, sites) * (1.0 - std::exp2(-static_cast<double>(j))));
    const unsigned r = sec.steps + 1 - j;
    reversed.emplace_back(sites, embed(base, sec.n_base, sites) * (1.0 - std::exp2(-static_cast<double>(r))));
  }
  const QuasiLimit lim = limit_of_quasi_increasing(seq);
  report::CsvTable table({"step", "sites", "trace", "gap", "margin"});
  bool monotone = true;
  for (std::size_t j = 0; j < lim.traces.size(); ++j) {
    const std::string gap = j == 0 ? "" : num(lim.gaps[j - 1]);
    const std::string margin = j == 0 ? "" : num(lim.margins[j - 1]);
    table.add_row({std::to_string(j + 1), std::to_string(seq[j].sites()), num(lim.traces[j]), gap, margin});
    if (j > 0 && (lim.traces[j] < lim.traces[j - 1] || lim.margins[j - 1] < -kMarginTolerance)) monotone = false;
  }
  out.tables.emplace_back("quasi_monotonicity", std::move(table));

  bool rejected = false;
  std::string reason;
  try {
    limit_of_quasi_increasing(reversed);
  } catch (const Error& e) {
    rejected = e.kind() == ErrorKind::InvalidSequence;
    reason = e.what();
  }
  out.results["quasi_monotonicity"] = {{"traces", lim.traces},
                                       {"margins", lim.margins},
                                       {"limit_sites", lim.sites},
                                       {"limit_trace", lim.limit.trace().real()},
                                       {"decreasing_rejected", rejected}};
  add_check(out, "quasi.monotone", monotone,
            fmt::format("traces {} .. {} over {} steps", num(lim.traces.front()), num(lim.traces.back()),
                        lim.traces.size()));
  add_check(out, "quasi.rejects_decreasing", rejected,
            rejected ? "decreasing sequence rejected: " + reason : "decreasing sequence was accepted");
}

void reduction_section(const QuantumConfig& cfg, const RunOptions& options, RunResult& out) {
  const auto& sec = *cfg.reduction;
  const std::size_t per_n = sec.epsilons.size();
  std::vector<ClassicalReduction> res(sec.n_max * per_n);
  parallel_for(res.size(), options.jobs, [&](std::size_t i) {
    res[i] = classical_reduction(*cfg.state, static_cast<unsigned>(i / per_n + 1), sec.epsilons[i % per_n]);
  });
  report::CsvTable table({"n", "epsilon", "quantum_count", "classical_count", "equal"});
  std::size_t mismatches = 0;
  for (const auto& r : res) {
    if (!r.equal) ++mismatches;
    table.add_row({std::to_string(r.n), num(r.epsilon), std::to_string(r.quantum_count),
                   std::to_string(r.classical_count), flag(r.equal)});
  }
  out.tables.emplace_back("classical_reduction", std::move(table));
  out.results["classical_reduction"] = {{"n_max", sec.n_max}, {"cases", res.size()}, {"mismatches", mismatches}};
  add_check(out, "classical_reduction", mismatches == 0,
            fmt::format("{} of {} (n, eps) cases where the quantum and classical typical sets differ", mismatches,
                        res.size()));
}

void transport_section(const QuantumConfig& cfg, RunResult& out) {
  const auto rep = transported_trace_compare(*cfg.state, *cfg.state, *cfg.family, cfg.transport->n);
  report::CsvTable table({"n", "direct", "transported", "gap", "weighted", "unitarity_error"});
  report::Series direct{"direct", {}}, transported{"transported", {}};
  Json rows = Json::array();
  double worst_unitarity = 0.0;
  for (const auto& p : rep.points) {
    const LocalDensityMatrix rho = local_density(*cfg.state, p.n, cfg.site_cap);
    const RealizedUniversal mu = cfg.family->realize(p.n, cfg.site_cap, &rho);
    const linalg::Matrix u = spectral_transport_unitary(rho.spectrum(), mu.spectrum);
    const double err =
        linalg::max_abs_diff(u.adjoint() * u, linalg::Matrix::Identity(u.rows(), u.cols()));
    worst_unitarity = std::max(worst_unitarity, err);
    table.add_row({std::to_string(p.n), num(p.direct), num(p.transported), num(p.gap), num(p.weighted), num(err)});
    direct.points.emplace_back(p.n, p.direct);
    transported.points.emplace_back(p.n, p.transported);
    rows.push_back({{"n", p.n}, {"direct", p.direct}, {"transported", p.transported}, {"gap", p.gap}});
  }
  out.tables.emplace_back("transport", std::move(table));
  report::Chart chart{"Transported trace", "n", "(1/n) log2 trace", {direct, transported}, {}};
  out.charts.emplace_back("transport", report::render_svg(chart));
  out.results["transport"] = {
      {"points", rows}, {"gap_nonincreasing", rep.gap_nonincreasing}, {"max_unitarity_error", worst_unitarity}};
  add_check(out, "transport.unitary", worst_unitarity <= kUnitarityTolerance,
            fmt::format("max |U^dag U - I| = {}", num(worst_unitarity)));
}

}  // namespace

void run_quantum(const CommonConfig& common, const QuantumConfig& cfg, const RunOptions& options, RunResult& out) {
  const ChainState& state = *cfg.state;
  Json st = {{"description", state.describe()},
             {"faithful", state.faithful()},
             {"ergodic", state.ergodic()},
             {"min_single_site_eigenvalue", state.min_single_site_eigenvalue()},
             {"entropy_rate", state.closed_form_entropy_rate()}};
  if (state.faithful() && state.min_single_site_eigenvalue() < cfg.warn_threshold)
    st["warning"] = fmt::format("near-singular state: min eigenvalue {} below {}",
                                num(state.min_single_site_eigenvalue()), num(cfg.warn_threshold));
  out.results["state"] = st;
  out.results["family"] = {{"members", cfg.family->members().size()},
                           {"tracial_weight", cfg.family->tracial_weight()},
                           {"total_weight", cfg.family->total_weight()}};
  out.results["site_cap"] = cfg.site_cap;

  if (cfg.items || cfg.item4) typicality_sections(common, cfg, out);
  if (cfg.entropy_rate) entropy_section(cfg, out);
  if (cfg.compatibility) compatibility_section(cfg, out);
  if (cfg.gacs_inequality) gacs_inequality_section(common, cfg, options, out);
  if (cfg.dominance) dominance_section(cfg, out);
  if (cfg.quasi) quasi_section(cfg, out);
  if (cfg.reduction) reduction_section(cfg, options, out);
  if (cfg.transport) transport_section(cfg, out);
}

}  // namespace brudno::experiment::detail
