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

// Config-driven experiment runner. A config is a JSON object naming one of
// four experiment kinds plus the sections to run; each section produces CSV
// tables, optional SVG charts, a block of results and pass/fail checks.
// The schema is documented in docs/config.md.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "brudno/report.hpp"

namespace brudno::experiment {

using Json = nlohmann::json;

inline constexpr const char* kSummaryVersion = "1";

enum class Kind { ClassicalBrudno, QuantumBrudno, EncodingSelftest, SemimeasureAudit };
std::string_view to_string(Kind kind);

struct Diagnostic {
  std::string path;  // JSON pointer of the offending field
  std::string message;
};

// Every problem in the config; empty when it can be run.
std::vector<Diagnostic> validate(const Json& config);

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

// Reads and parses a config file; syntax errors become a ConfigError.
Json load_config(const std::filesystem::path& path);

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct RunOptions {
  unsigned jobs = 1;
  std::optional<std::uint64_t> seed_override;
};

struct RunResult {
  Kind kind = Kind::EncodingSelftest;
  std::string name;
  Json config;  // as run, after any seed override
  std::string config_hash;
  Json results = Json::object();
  std::vector<Check> checks;
  std::vector<std::pair<std::string, report::CsvTable>> tables;
  std::vector<std::pair<std::string, std::string>> charts;

  bool pass() const;
  const Check* find_check(std::string_view name) const;
  // Schema-versioned summary. The timestamp is the only field that changes
  // between identical reruns and is not covered by config_hash.
  Json summary(const std::string& timestamp) const;
};

// Canonical text of a config (sorted keys, compact) and its hash.
std::string canonical_text(const Json& config);
std::string config_hash(const Json& config);

// Throws ConfigError when the config does not validate.
RunResult run(const Json& config, const RunOptions& options = {});

// <dir>/summary.json, <dir>/<table>.csv, <dir>/<chart>.svg
void write_artifacts(const RunResult& result, const std::filesystem::path& dir, const std::string& timestamp);

}  // namespace brudno::experiment
