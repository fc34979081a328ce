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

// brudno: run, validate and list experiment configs.
//
// Exit status: 0 all checks pass, 1 a check failed, 2 invalid config,
// 3 runtime error.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "CLI11.hpp"
#include "brudno/error.hpp"
#include "brudno/experiment.hpp"

namespace fs = std::filesystem;
namespace ex = brudno::experiment;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInvalidConfig = 2;
constexpr int kExitRuntimeError = 3;

fs::path config_dir() {
  if (const char* env = std::getenv("BRUDNO_CONFIG_DIR")) return env;
  return BRUDNO_CONFIG_DIR;
}

// A bare name such as "classical-bernoulli" refers to a shipped config.
fs::path resolve(const std::string& arg) {
  fs::path p(arg);
  if (fs::exists(p) || p.has_parent_path() || p.has_extension()) return p;
  return config_dir() / (arg + ".json");
}

std::string timestamp() {
  std::time_t t = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void print_diagnostics(const std::vector<ex::Diagnostic>& diags) {
  for (const auto& d : diags) std::cerr << fmt::format("  {}: {}\n", d.path.empty() ? "/" : d.path, d.message);
}

int cmd_run(const std::string& config_arg, const std::optional<std::string>& out_arg, unsigned jobs,
            std::optional<std::uint64_t> seed_override) {
  const fs::path path = resolve(config_arg);
  ex::RunOptions opts{jobs, seed_override};
  ex::RunResult result;
  try {
    const ex::Json config = ex::load_config(path);
    const auto start = std::chrono::steady_clock::now();
    result = ex::run(config, opts);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const fs::path out_dir = out_arg ? fs::path(*out_arg) : fs::path("out") / result.name;
    ex::write_artifacts(result, out_dir, timestamp());
    std::cout << fmt::format("{} ({}) config {} in {:.2f} s\n", result.name, ex::to_string(result.kind),
                             result.config_hash.substr(0, 12), secs);
    for (const auto& c : result.checks)
      std::cout << fmt::format("  [{}] {}: {}\n", c.pass ? "pass" : "FAIL", c.name, c.detail);
    std::cout << fmt::format("artifacts written to {}\n", out_dir.string());
  } catch (const ex::ConfigError& e) {
    std::cerr << fmt::format("invalid config {}:\n", path.string());
    print_diagnostics(e.diagnostics());
    return kExitInvalidConfig;
  } catch (const std::exception& e) {
    std::cerr << fmt::format("error: {}\n", e.what());
    return kExitRuntimeError;
  }
  return result.pass() ? kExitPass : kExitCheckFailed;
}

int cmd_validate(const std::string& config_arg) {
  const fs::path path = resolve(config_arg);
  try {
    const auto diags = ex::validate(ex::load_config(path));
    if (diags.empty()) {
      std::cout << fmt::format("{}: ok\n", path.string());
      return kExitPass;
    }
    std::cerr << fmt::format("{}: {} problem(s)\n", path.string(), diags.size());
    print_diagnostics(diags);
  } catch (const ex::ConfigError& e) {
    std::cerr << fmt::format("{}:\n", path.string());
    print_diagnostics(e.diagnostics());
  }
  return kExitInvalidConfig;
}

int cmd_list() {
  const fs::path dir = config_dir();
  std::vector<fs::path> files;
  if (fs::is_directory(dir))
    for (const auto& entry : fs::directory_iterator(dir))
      if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    try {
      const ex::Json j = ex::load_config(f);
      std::cout << fmt::format("{:<28} {:<20} {}\n", f.stem().string(), j.value("kind", "?"),
                               j.value("description", ""));
    } catch (const ex::ConfigError&) {
      std::cout << fmt::format("{:<28} (unreadable)\n", f.stem().string());
    }
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Algorithmic and quantum complexity-rate experiments"};
  app.require_subcommand(1);

  std::string config;
  std::optional<std::string> out;
  unsigned jobs = 1;
  std::optional<std::uint64_t> seed_override;

  auto* run = app.add_subcommand("run", "Run an experiment config and write its artifacts");
  run->add_option("--config", config, "Config file, or the name of a shipped example")->required();
  run->add_option("--out", out, "Artifact directory (default out/<name>)");
  run->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  run->add_option("--seed-override", seed_override, "Replace the config seed");

  auto* validate = app.add_subcommand("validate", "Check a config and list every problem");
  validate->add_option("--config", config, "Config file, or the name of a shipped example")->required();

  auto* list = app.add_subcommand("list-examples", "List the shipped example configs");

  CLI11_PARSE(app, argc, argv);
  if (*run) return cmd_run(config, out, jobs, seed_override);
  if (*validate) return cmd_validate(config);
  if (*list) return cmd_list();
  return kExitRuntimeError;
}
