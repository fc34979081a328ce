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

// Acceptance driver. Each criterion runs shipped configs with the required
// thresholds pinned over whatever the config says, then prints one line:
//   criterion K: PASS|FAIL <title> (<detail>)
// Exit status is 0 only when every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "CLI11.hpp"
#include "brudno/experiment.hpp"

namespace fs = std::filesystem;
using namespace brudno::experiment;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;  // 0 for no limit
  std::function<Outcome(const fs::path&)> body;
};

Json load(const fs::path& dir, const std::string& name) { return load_config(dir / (name + ".json")); }

std::vector<fs::path> configs_of_kind(const fs::path& dir, std::initializer_list<const char*> kinds) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() != ".json") continue;
    const Json cfg = load_config(e.path());
    for (const char* k : kinds)
      if (cfg.value("kind", "") == k) out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Every named check must exist and pass.
Outcome require(const RunResult& r, const std::vector<std::string>& names) {
  Outcome o;
  std::vector<std::string> parts;
  for (const auto& n : names) {
    const Check* c = r.find_check(n);
    if (!c) {
      o.pass = false;
      parts.push_back(n + ": missing");
      continue;
    }
    if (!c->pass) o.pass = false;
    parts.push_back(fmt::format("{} {}: {}", n, c->pass ? "ok" : "FAILED", c->detail));
  }
  for (std::size_t i = 0; i < parts.size(); ++i) o.detail += (i ? "; " : "") + parts[i];
  return o;
}

std::vector<std::uint64_t> range(std::uint64_t a, std::uint64_t b) {
  std::vector<std::uint64_t> v;
  for (auto i = a; i <= b; ++i) v.push_back(i);
  return v;
}

Outcome c1(const fs::path& dir) {
  Json cfg = load(dir, "classical-bernoulli");
  cfg["sections"] = {
      {"rate", {{"n", {16, 64, 256, 1024, 4096}}, {"mc_samples", 200}, {"tolerance", 0.03}}},
      {"per_sequence",
       {{"n", {64, 256, 1024, 4096}}, {"sequences", 100}, {"tolerance", 0.05}, {"min_fraction", 0.95},
        {"agreement", false}}}};
  return require(run(cfg), {"rate.endpoint", "per_sequence.fraction"});
}

Outcome c2(const fs::path& dir) {
  Json cfg = load(dir, "classical-markov");
  cfg["sections"] = {{"rate", {{"n", {16, 64, 256, 1024, 4096}}, {"mc_samples", 200}, {"tolerance", 0.05}}}};
  return require(run(cfg), {"rate.endpoint"});
}

Outcome c3(const fs::path& dir) {
  Outcome o;
  std::size_t applicable = 0, skipped = 0;
  for (const auto& p : configs_of_kind(dir, {"classical-brudno"})) {
    Json cfg = load_config(p);
    if (cfg["source"].value("type", "") == "orbit") {
      ++skipped;  // deterministic orbit: no source distribution to compare against
      continue;
    }
    cfg["sections"] = {{"lemma_bound", {{"n", range(2, 12)}}}};
    const RunResult r = run(cfg);
    if (const Check* c = r.find_check("lemma_bound")) {
      ++applicable;
      if (!c->pass) {
        o.pass = false;
        o.detail += fmt::format("{}: {}; ", r.name, c->detail);
      }
    } else {
      ++skipped;  // source is not a family member
    }
  }
  if (applicable == 0) o.pass = false;
  o.detail += fmt::format("{} configs with a member source checked for n = 2..12, {} not applicable", applicable, skipped);
  return o;
}

Outcome c4(const fs::path& dir) {
  Outcome o;
  std::size_t families = 0;
  for (const auto& p : configs_of_kind(dir, {"classical-brudno", "semimeasure-audit"})) {
    Json cfg = load_config(p);
    cfg["sections"] = {{"counting", {{"n_max", 12}, {"c_max", 12}}}};
    const RunResult r = run(cfg);
    ++families;
    const Check* c = r.find_check("counting");
    if (!c || !c->pass) {
      o.pass = false;
      o.detail += fmt::format("{}: {}; ", r.name, c ? c->detail : "missing");
    }
  }
  if (families == 0) o.pass = false;
  o.detail += fmt::format("{} families, n <= 12, c = 1..12", families);
  return o;
}

Outcome c5(const fs::path& dir) {
  Json cfg = load(dir, "quantum-items");
  cfg["sections"] = {{"items_1_3", {{"n", {8, 10, 12}}, {"epsilons", {0.1, 0.2}}, {"samples", 200}}}};
  return require(run(cfg), {"items.item1", "items.item2", "items.item3"});
}

Outcome c6(const fs::path& dir) {
  Json cfg = load(dir, "quantum-item4");
  cfg["sections"] = {{"item_4", {{"n", {8, 10, 12}}, {"epsilons", {0.1}}, {"samples", 200}, {"max_final_slack", 0.15}}}};
  return require(run(cfg), {"item4.band", "item4.slack_trend", "item4.final_slack"});
}

Outcome c7(const fs::path& dir) {
  Json cfg = load(dir, "quantum-structure");
  cfg["sections"] = {{"gacs_inequality", {{"pairs", 100}, {"dim_min", 2}, {"dim_max", 16}}}};
  return require(run(cfg), {"gacs_inequality.random", "gacs_inequality.example"});
}

Outcome c8(const fs::path& dir) {
  Json cfg = load(dir, "quantum-structure");
  cfg["sections"] = {{"dominance", {{"n_max", 10}}}};
  return require(run(cfg), {"dominance.margin", "dominance.entropy_bound"});
}

Outcome c9(const fs::path& dir) {
  Json cfg = load(dir, "encoding-selftest");
  cfg["sections"]["tau"] = {{"max_length", 16}};
  cfg["sections"]["pairing"] = {{"limit", 65536}};
  cfg["sections"]["elementary"]["samples"] = 100;
  return require(run(cfg), {"tau.examples", "tau.bijection", "pairing.examples", "pairing.round_trip",
                            "integers.examples", "integers.round_trip", "elementary.bell", "elementary.round_trip"});
}

Outcome c10(const fs::path& dir) {
  Json cfg = load(dir, "quantum-structure");
  cfg["sections"] = {{"compatibility", {{"n_max", 11}}},
                     {"quasi_monotonicity", {{"n_base", 3}, {"steps", 6}}},
                     {"classical_reduction", {{"n_max", 12}, {"epsilons", {0.05, 0.1, 0.2}}}}};
  return require(run(cfg), {"compatibility", "quasi.monotone", "quasi.rejects_decreasing", "classical_reduction"});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"brudno acceptance checks"};
  std::vector<int> selected;
  std::string config_dir = BRUDNO_CONFIG_DIR;
  app.add_option("--criterion", selected, "criterion number (repeatable); all when omitted")->check(CLI::Range(1, 10));
  app.add_option("--config-dir", config_dir, "directory with the shipped configs");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> all = {
      {1, "classical rate, Bernoulli(0.3)", 30, c1},
      {2, "classical rate, Markov chain", 60, c2},
      {3, "finite-n lemma bound", 0, c3},
      {4, "counting bounds", 0, c4},
      {5, "quantum items 1-3", 120, c5},
      {6, "quantum item 4", 0, c6},
      {7, "Gacs inequality", 0, c7},
      {8, "dominance entropy bound", 0, c8},
      {9, "encodings", 0, c9},
      {10, "structural invariants", 0, c10},
  };

  bool ok = true;
  for (const auto& c : all) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body(config_dir);
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_seconds > 0 && secs > c.budget_seconds) {
      o.pass = false;
      o.detail += fmt::format("; runtime {:.1f} s exceeds {:.0f} s", secs, c.budget_seconds);
    }
    ok = ok && o.pass;
    std::cout << fmt::format("criterion {}: {} {} ({:.1f} s) {}", c.id, o.pass ? "PASS" : "FAIL", c.title, secs,
                             o.detail)
              << std::endl;
  }
  return ok ? 0 : 1;
}
