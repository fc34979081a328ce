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
#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include <fmt/core.h>

#include "internal.hpp"

namespace brudno::experiment {

std::string_view to_string(Kind kind) {
  switch (kind) {
    case Kind::ClassicalBrudno: return "classical-brudno";
    case Kind::QuantumBrudno: return "quantum-brudno";
    case Kind::EncodingSelftest: return "encoding-selftest";
    case Kind::SemimeasureAudit: return "semimeasure-audit";
  }
  return "unknown";
}

bool RunResult::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check* RunResult::find_check(std::string_view name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

Json RunResult::summary(const std::string& timestamp) const {
  Json checks_json = Json::array();
  for (const auto& c : checks) checks_json.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  Json artifacts = Json::array();
  for (const auto& [name, table] : tables)
    artifacts.push_back({{"file", name + ".csv"}, {"hash", report::git_blob_hash(table.render())}});
  for (const auto& [name, svg] : charts)
    artifacts.push_back({{"file", name + ".svg"}, {"hash", report::git_blob_hash(svg)}});
  return {{"version", kSummaryVersion},
          {"kind", to_string(kind)},
          {"name", name},
          {"config_hash", config_hash},
          {"config", config},
          {"timestamp", timestamp},
          {"pass", pass()},
          {"checks", checks_json},
          {"results", results},
          {"artifacts", artifacts}};
}

std::string canonical_text(const Json& config) { return config.dump(); }

std::string config_hash(const Json& config) { return report::git_blob_hash(canonical_text(config)); }

RunResult run(const Json& config, const RunOptions& options) {
  Json effective = config;
  if (options.seed_override && effective.is_object()) effective["seed"] = *options.seed_override;
  std::vector<Diagnostic> diags;
  const detail::ParsedConfig parsed = detail::parse(effective, diags);
  if (!diags.empty()) throw ConfigError(std::move(diags));

  RunResult out;
  out.kind = parsed.common.kind;
  out.name = parsed.common.name;
  out.config = effective;
  out.config_hash = config_hash(effective);
  switch (parsed.common.kind) {
    case Kind::ClassicalBrudno: detail::run_classical(parsed.common, *parsed.classical, options, out); break;
    case Kind::QuantumBrudno: detail::run_quantum(parsed.common, *parsed.quantum, options, out); break;
    case Kind::EncodingSelftest: detail::run_selftest(parsed.common, *parsed.selftest, options, out); break;
    case Kind::SemimeasureAudit: detail::run_audit(parsed.common, *parsed.audit, options, out); break;
  }
  return out;
}

void write_artifacts(const RunResult& result, const std::filesystem::path& dir, const std::string& timestamp) {
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& file, const std::string& content) {
    std::ofstream os(dir / file, std::ios::binary);
    if (!os) throw std::runtime_error(fmt::format("cannot write {}", (dir / file).string()));
    os << content;
  };
  for (const auto& [name, table] : result.tables) write(name + ".csv", table.render());
  for (const auto& [name, svg] : result.charts) write(name + ".svg", svg);
  write("summary.json", result.summary(timestamp).dump(2) + "\n");
}

namespace detail {

void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& body) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(jobs, 1u), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::string num(double v) { return report::number(v); }

void add_check(RunResult& out, std::string name, bool pass, std::string detail) {
  out.checks.push_back({std::move(name), pass, std::move(detail)});
}

}  // namespace detail
}  // namespace brudno::experiment
