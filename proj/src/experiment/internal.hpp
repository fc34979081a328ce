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

// Shared pieces of the experiment runner: the config reader, typed
// configs and the per-kind pipelines.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "brudno/experiment.hpp"
#include "brudno/quantum_gacs.hpp"
#include "brudno/semimeasure.hpp"
#include "brudno/spin_chain.hpp"
#include "brudno/symbolic.hpp"

namespace brudno::experiment::detail {

using Diagnostics = std::vector<Diagnostic>;

// Walks one JSON object, records diagnostics for missing or ill-typed
// fields and, on finish(), for keys nobody asked for.
class Reader {
 public:
  Reader(const Json* node, std::string path, Diagnostics* diags);

  bool present() const noexcept { return node_ != nullptr; }
  bool has(const std::string& key) const;
  std::string path_of(const std::string& key) const { return path_ + "/" + key; }
  const std::string& path() const noexcept { return path_; }
  void error(const std::string& key, const std::string& message) const;
  Diagnostics* diagnostics() const noexcept { return diags_; }

  const Json* raw(const std::string& key, bool required);
  std::optional<std::string> str(const std::string& key, bool required);
  std::optional<double> num(const std::string& key, bool required, double lo, double hi);
  std::optional<std::uint64_t> uint(const std::string& key, bool required, std::uint64_t lo, std::uint64_t hi);
  std::optional<bool> boolean(const std::string& key, bool required);
  std::optional<std::vector<double>> num_list(const std::string& key, bool required, double lo, double hi);
  std::optional<std::vector<std::uint64_t>> uint_list(const std::string& key, bool required, std::uint64_t lo,
                                                      std::uint64_t hi);
  Reader object(const std::string& key, bool required);
  void finish() const;

 private:
  const Json* node_;
  std::string path_;
  Diagnostics* diags_;
  std::vector<std::string> used_;
};

struct CommonConfig {
  Kind kind = Kind::EncodingSelftest;
  std::string name;
  std::string description;
  std::uint64_t seed = 0;
};

struct FamilyConfig {
  std::optional<SemiMeasure> mu;
  std::string label;
};

struct ClassicalConfig {
  std::optional<SymbolicSource> source;
  FamilyConfig family;
  std::uint64_t cap = kDefaultEnumerationCap;

  struct Rate {
    std::vector<std::size_t> n;
    std::size_t mc_samples = 200;
    std::optional<double> tolerance;
  };
  struct PerSequence {
    std::vector<std::size_t> n;
    std::size_t sequences = 100;
    std::optional<double> tolerance;
    double min_fraction = 0.95;
    bool agreement = true;
    std::size_t mc_samples = 200;
  };
  struct Lemma {
    std::vector<std::size_t> n;
  };
  struct Counting {
    std::size_t n_max = 12;
    unsigned c_max = 12;
  };
  struct Typical {
    std::vector<std::size_t> n;
    std::vector<double> epsilons;
  };
  std::optional<Rate> rate;
  std::optional<PerSequence> per_sequence;
  std::optional<Lemma> lemma;
  std::optional<Counting> counting;
  std::optional<Typical> typical;
};

struct QuantumConfig {
  std::optional<ChainState> state;
  std::optional<UniversalSemiDensity> family;
  unsigned site_cap = kDefaultSiteCap;
  double warn_threshold = kFaithfulWarnThreshold;

  struct Items {
    std::vector<unsigned> n;
    std::vector<double> epsilons;
    std::size_t samples = 200;
  };
  struct Item4 {
    std::vector<unsigned> n;
    std::vector<double> epsilons;
    std::size_t samples = 200;
    std::optional<double> max_final_slack;
  };
  struct EntropyRate {
    unsigned n_max = 10;
  };
  struct Compatibility {
    unsigned n_max = 11;
  };
  struct GacsInequality {
    std::size_t pairs = 100;
    unsigned dim_min = 2;
    unsigned dim_max = 16;
  };
  struct Dominance {
    unsigned n_max = 10;
  };
  struct Quasi {
    unsigned n_base = 3;
    unsigned steps = 6;
  };
  struct Reduction {
    unsigned n_max = 12;
    std::vector<double> epsilons;
  };
  struct Transport {
    std::vector<unsigned> n;
  };
  std::optional<Items> items;
  std::optional<Item4> item4;
  std::optional<EntropyRate> entropy_rate;
  std::optional<Compatibility> compatibility;
  std::optional<GacsInequality> gacs_inequality;
  std::optional<Dominance> dominance;
  std::optional<Quasi> quasi;
  std::optional<Reduction> reduction;
  std::optional<Transport> transport;
};

struct SelftestConfig {
  std::optional<unsigned> tau_max_length;
  std::optional<std::uint64_t> pairing_limit;
  std::optional<std::int64_t> integer_range;
  struct Algebraic {
    std::size_t samples = 100;
    unsigned max_degree = 4;
    std::int64_t max_coefficient = 50;
  };
  struct Elementary {
    std::size_t samples = 100;
    std::size_t max_terms = 6;
    std::size_t max_length = 3;
  };
  std::optional<Algebraic> algebraic;
  std::optional<Elementary> elementary;
};

struct AuditConfig {
  FamilyConfig family;
  std::optional<std::size_t> normalization_n_max;
  std::optional<std::size_t> martingale_n_max;
  std::optional<std::size_t> dominance_n_max;
  std::optional<ClassicalConfig::Counting> counting;
  struct Redundancy {
    double p_one = 0.3;
    std::vector<std::size_t> n;
    std::size_t samples = 100;
  };
  std::optional<Redundancy> redundancy;
};

struct ParsedConfig {
  CommonConfig common;
  std::optional<ClassicalConfig> classical;
  std::optional<QuantumConfig> quantum;
  std::optional<SelftestConfig> selftest;
  std::optional<AuditConfig> audit;
};

ParsedConfig parse(const Json& config, Diagnostics& diags);

void run_classical(const CommonConfig& common, const ClassicalConfig& cfg, const RunOptions& options, RunResult& out);
void run_quantum(const CommonConfig& common, const QuantumConfig& cfg, const RunOptions& options, RunResult& out);
void run_selftest(const CommonConfig& common, const SelftestConfig& cfg, const RunOptions& options, RunResult& out);
void run_audit(const CommonConfig& common, const AuditConfig& cfg, const RunOptions& options, RunResult& out);

// Runs body(i) for i in [0, count) on up to `jobs` threads. Results must be
// written to per-index slots so the output does not depend on scheduling.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& body);

std::string num(double v);
void counting_section(const SemiMeasure& mu, const ClassicalConfig::Counting& sec, std::uint64_t cap, RunResult& out);
void add_check(RunResult& out, std::string name, bool pass, std::string detail);

}  // namespace brudno::experiment::detail
