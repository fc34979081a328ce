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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "brudno/experiment.hpp"
#include "doctest.h"

using namespace brudno::experiment;

namespace {
Json shipped(const std::string& name) {
  return load_config(std::filesystem::path(BRUDNO_CONFIG_DIR) / (name + ".json"));
}

bool has_diagnostic(const std::vector<Diagnostic>& ds, const std::string& path, const std::string& fragment) {
  for (const auto& d : ds)
    if (d.path == path && d.message.find(fragment) != std::string::npos) return true;
  return false;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

TEST_CASE("every shipped config validates") {
  for (const auto& entry : std::filesystem::directory_iterator(BRUDNO_CONFIG_DIR)) {
    if (entry.path().extension() != ".json") continue;
    const auto ds = validate(load_config(entry.path()));
    INFO(entry.path().filename().string());
    CHECK(ds.empty());
  }
}

TEST_CASE("missing fields") {
  const auto ds = validate(Json::object());
  CHECK(has_diagnostic(ds, "/kind", "missing"));
  CHECK(has_diagnostic(ds, "/name", "missing"));
  CHECK_THROWS_AS(run(Json::object()), ConfigError);
  CHECK_FALSE(validate(Json::array()).empty());
}

TEST_CASE("resource limit") {
  Json cfg = shipped("quantum-item4");
  cfg["sections"]["item_4"]["n"] = {8, 20};
  const auto ds = validate(cfg);
  REQUIRE_FALSE(ds.empty());
  bool found = false;
  for (const auto& d : ds)
    if (d.message.find("resource limit") != std::string::npos && d.message.find("20") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("family weights") {
  Json cfg = shipped("classical-fair-coin");
  cfg["family"]["members"][0]["weight"] = 0.95;
  cfg["family"]["members"][1]["weight"] = 0.25;
  const auto ds = validate(cfg);
  bool found = false;
  for (const auto& d : ds)
    if (d.path.rfind("/family", 0) == 0 && d.message.find("> 1") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("unknown keys and bad values") {
  Json cfg = shipped("encoding-selftest");
  cfg["sections"]["tau"]["max_lenght"] = 4;
  cfg["log_base"] = 10;
  cfg["name"] = "has space";
  const auto ds = validate(cfg);
  CHECK(has_diagnostic(ds, "/sections/tau/max_lenght", "unknown key"));
  CHECK(has_diagnostic(ds, "/log_base", ""));
  CHECK(has_diagnostic(ds, "/name", ""));

  Json none = shipped("encoding-selftest");
  none["sections"] = Json::object();
  CHECK(has_diagnostic(validate(none), "/sections", "no sections selected"));
}

TEST_CASE("config hash is key-order independent") {
  const Json a = Json::parse(R"({"b": 1, "a": [1, 2]})");
  const Json b = Json::parse(R"({"a": [1, 2], "b": 1})");
  CHECK(canonical_text(a) == canonical_text(b));
  CHECK(config_hash(a) == config_hash(b));
  CHECK(config_hash(a) == brudno::report::git_blob_hash(canonical_text(a)));
}

TEST_CASE("runs are deterministic") {
  Json cfg = shipped("classical-bernoulli");
  cfg["sections"] = {{"rate", {{"n", {8, 64}}, {"mc_samples", 20}}},
                     {"per_sequence", {{"sequences", 4}, {"n", {64, 256}}, {"mc_samples", 20}}}};
  RunOptions one;
  RunOptions two;
  two.jobs = 2;
  const RunResult a = run(cfg, one);
  const RunResult b = run(cfg, two);
  const auto dir = std::filesystem::temp_directory_path() / "brudno_determinism";
  std::filesystem::remove_all(dir);
  write_artifacts(a, dir / "a", "2026-01-01T00:00:00Z");
  write_artifacts(b, dir / "b", "2026-01-01T00:00:00Z");
  std::size_t files = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir / "a")) {
    ++files;
    CHECK(read_file(e.path()) == read_file(dir / "b" / e.path().filename()));
  }
  CHECK(files >= 3);
  CHECK(a.summary("t")["artifacts"] == b.summary("t")["artifacts"]);

  RunOptions other;
  other.seed_override = 12345;
  const RunResult c = run(cfg, other);
  CHECK(c.config["seed"] == 12345);
  CHECK(c.config_hash != a.config_hash);
  std::filesystem::remove_all(dir);
}

TEST_CASE("selftest run reports named checks") {
  const RunResult r = run(shipped("encoding-selftest"));
  CHECK(r.kind == Kind::EncodingSelftest);
  CHECK(r.pass());
  REQUIRE(r.find_check("elementary.bell") != nullptr);
  CHECK(r.find_check("elementary.bell")->pass);
  CHECK(r.find_check("no.such.check") == nullptr);
  const Json s = r.summary("t");
  CHECK(s["version"] == kSummaryVersion);
  CHECK(s["kind"] == "encoding-selftest");
  CHECK(s["pass"] == true);
}
