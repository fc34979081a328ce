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
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <fmt/core.h>

#include "brudno/error.hpp"
#include "internal.hpp"

namespace brudno::experiment {

namespace detail {
namespace {

constexpr std::uint64_t kMaxU64 = std::numeric_limits<std::uint64_t>::max();

std::string json_type(const Json& j) {
  if (j.is_null()) return "null";
  if (j.is_boolean()) return "boolean";
  if (j.is_number()) return "number";
  if (j.is_string()) return "string";
  if (j.is_array()) return "array";
  return "object";
}

// "-0.2", "3/4", 0.25 -> exact decimal or fraction text -> double
std::optional<double> scalar_value(const Json& j, const std::string& path, Diagnostics& diags) {
  try {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
      std::string_view text = j.get_ref<const std::string&>();
      double sign = 1.0;
      if (!text.empty() && text.front() == '-') {
        sign = -1.0;
        text.remove_prefix(1);
      }
      return sign * Rational::parse(text).to_double();
    }
  } catch (const Error& e) {
    diags.push_back({path, e.what()});
    return std::nullopt;
  }
  diags.push_back({path, "expected a number or a rational string such as \"1/3\""});
  return std::nullopt;
}

std::optional<Rational> rational_value(const Json& j, const std::string& path, Diagnostics& diags) {
  try {
    if (j.is_string()) return Rational::parse(j.get_ref<const std::string&>());
    if (j.is_number()) return Rational::parse(j.dump());
  } catch (const Error& e) {
    diags.push_back({path, e.what()});
    return std::nullopt;
  }
  diags.push_back({path, "expected a non-negative rational such as \"1/3\" or 0.25"});
  return std::nullopt;
}

std::optional<std::complex<double>> complex_value(const Json& j, const std::string& path, Diagnostics& diags) {
  if (j.is_object()) {
    Reader r(&j, path, &diags);
    std::optional<double> re = 0.0, im = 0.0;
    if (const Json* x = r.raw("re", false)) re = scalar_value(*x, r.path_of("re"), diags);
    if (const Json* x = r.raw("im", false)) im = scalar_value(*x, r.path_of("im"), diags);
    r.finish();
    if (!re || !im) return std::nullopt;
    return std::complex<double>(*re, *im);
  }
  auto v = scalar_value(j, path, diags);
  if (!v) return std::nullopt;
  return std::complex<double>(*v, 0.0);
}

std::optional<Eigen::MatrixXd> real_matrix(const Json* j, const std::string& path, Diagnostics& diags) {
  if (!j) return std::nullopt;
  if (!j->is_array() || j->empty() || !(*j)[0].is_array()) {
    diags.push_back({path, "expected a non-empty array of rows"});
    return std::nullopt;
  }
  const std::size_t rows = j->size();
  const std::size_t cols = (*j)[0].size();
  Eigen::MatrixXd m(rows, cols);
  bool ok = true;
  for (std::size_t i = 0; i < rows; ++i) {
    const Json& row = (*j)[i];
    if (!row.is_array() || row.size() != cols) {
      diags.push_back({fmt::format("{}/{}", path, i), "rows must all have the same length"});
      return std::nullopt;
    }
    for (std::size_t k = 0; k < cols; ++k) {
      auto v = scalar_value(row[k], fmt::format("{}/{}/{}", path, i, k), diags);
      if (v) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = *v;
      else ok = false;
    }
  }
  if (!ok) return std::nullopt;
  return m;
}

std::optional<linalg::Matrix> complex_matrix(const Json* j, const std::string& path, Diagnostics& diags) {
  if (!j) return std::nullopt;
  if (!j->is_array() || j->size() != 2) {
    diags.push_back({path, "expected a 2x2 array of entries"});
    return std::nullopt;
  }
  linalg::Matrix m(2, 2);
  bool ok = true;
  for (std::size_t i = 0; i < 2; ++i) {
    const Json& row = (*j)[i];
    if (!row.is_array() || row.size() != 2) {
      diags.push_back({fmt::format("{}/{}", path, i), "expected a row of two entries"});
      return std::nullopt;
    }
    for (std::size_t k = 0; k < 2; ++k) {
      auto v = complex_value(row[k], fmt::format("{}/{}/{}", path, i, k), diags);
      if (v) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = *v;
      else ok = false;
    }
  }
  if (!ok) return std::nullopt;
  return m;
}

std::optional<Kind> parse_kind(const std::string& s) {
  if (s == "classical-brudno") return Kind::ClassicalBrudno;
  if (s == "quantum-brudno") return Kind::QuantumBrudno;
  if (s == "encoding-selftest") return Kind::EncodingSelftest;
  if (s == "semimeasure-audit") return Kind::SemimeasureAudit;
  return std::nullopt;
}

template <typename F>
auto guarded(Diagnostics& diags, const std::string& path, F&& f) -> std::optional<decltype(f())> {
  try {
    return f();
  } catch (const Error& e) {
    diags.push_back({path, e.what()});
    return std::nullopt;
  }
}

std::optional<SymbolicSource> parse_source(Reader r) {
  Diagnostics& diags = *r.diagnostics();
  if (!r.present()) return std::nullopt;
  const auto type = r.str("type", true);
  std::optional<SymbolicSource> out;
  if (type == "bernoulli") {
    const bool has_p = r.has("p_one");
    const bool has_list = r.has("probabilities");
    if (has_p == has_list) {
      r.error("p_one", "give exactly one of p_one and probabilities");
    } else if (has_p) {
      if (auto p = r.num("p_one", true, 0.0, 1.0))
        out = guarded(diags, r.path(), [&] { return SymbolicSource::bernoulli_binary(*p); });
    } else if (auto list = r.num_list("probabilities", true, 0.0, 1.0)) {
      if (list->size() > 10) r.error("probabilities", "at most 10 symbols are supported");
      else out = guarded(diags, r.path_of("probabilities"), [&] { return SymbolicSource::bernoulli(*list); });
    }
  } else if (type == "markov") {
    if (auto m = real_matrix(r.raw("transition", true), r.path_of("transition"), diags)) {
      if (m->rows() > 10) r.error("transition", "at most 10 states are supported");
      else out = guarded(diags, r.path_of("transition"), [&] { return SymbolicSource::markov(*m); });
    }
  } else if (type == "orbit") {
    const auto map = r.str("map", true);
    OrbitMap kind = OrbitMap::Doubling;
    if (map == "rotation") kind = OrbitMap::Rotation;
    else if (map && *map != "doubling") r.error("map", "expected \"doubling\" or \"rotation\"");
    std::optional<Rational> x0, alpha = Rational{};
    if (const Json* j = r.raw("x0", true)) x0 = rational_value(*j, r.path_of("x0"), diags);
    if (kind == OrbitMap::Rotation) {
      alpha.reset();
      if (const Json* j = r.raw("alpha", true)) alpha = rational_value(*j, r.path_of("alpha"), diags);
    } else if (r.has("alpha")) {
      r.raw("alpha", false);
      r.error("alpha", "alpha only applies to the rotation map");
    }
    IntervalPartition partition{{Rational{0, 1}, Rational{1, 2}, Rational{1, 1}}};
    bool partition_ok = true;
    if (const Json* j = r.raw("partition", false)) {
      partition.cuts.clear();
      if (!j->is_array()) {
        r.error("partition", "expected an array of cut points");
        partition_ok = false;
      } else {
        for (std::size_t i = 0; i < j->size(); ++i) {
          auto c = rational_value((*j)[i], fmt::format("{}/{}", r.path_of("partition"), i), diags);
          if (c) partition.cuts.push_back(*c);
          else partition_ok = false;
        }
      }
    }
    const auto length = r.uint("orbit_length", false, 1, std::uint64_t{1} << 24);
    if (x0 && alpha && partition_ok && map)
      out = guarded(diags, r.path(), [&] {
        return SymbolicSource::orbit(kind, *alpha, partition, *x0, length.value_or(std::uint64_t{1} << 16));
      });
  } else if (type) {
    r.error("type", "expected \"bernoulli\", \"markov\" or \"orbit\"");
  }
  r.finish();
  return out;
}

std::optional<WordModel> parse_member_model(Reader& r, const std::optional<SymbolicSource>& source, unsigned k) {
  Diagnostics& diags = *r.diagnostics();
  const auto kind = r.str("kind", true);
  if (!kind) return std::nullopt;
  if (*kind == "kt") return WordModel::kt(k);
  if (*kind == "uniform") return WordModel::uniform(k);
  if (*kind == "markov-kt") {
    const auto order = r.uint("order", false, 0, 64).value_or(1);
    return guarded(diags, r.path_of("order"), [&] { return WordModel::markov_kt(static_cast<unsigned>(order), k); });
  }
  if (*kind == "point-mass") {
    const auto word = r.str("word", true);
    if (!word) return std::nullopt;
    return guarded(diags, r.path_of("word"), [&] { return WordModel::point_mass(SymbolString::parse(*word, k)); });
  }
  if (*kind == "source") {
    if (!source) {
      r.error("kind", "\"source\" refers to the experiment source, which is missing or invalid");
      return std::nullopt;
    }
    return guarded(diags, r.path(), [&] { return WordModel::source(*source); });
  }
  if (*kind == "bernoulli" || *kind == "markov") {
    // Reuse the source parser on the member object, minus the weight.
    Json copy = Json::object();
    const Json* self = nullptr;
    (void)self;
    if (*kind == "bernoulli") {
      if (const Json* j = r.raw("p_one", false)) copy["p_one"] = *j;
      if (const Json* j = r.raw("probabilities", false)) copy["probabilities"] = *j;
    } else if (const Json* j = r.raw("transition", false)) {
      copy["transition"] = *j;
    }
    copy["type"] = *kind;
    auto src = parse_source(Reader(&copy, r.path(), &diags));
    if (!src) return std::nullopt;
    if (src->alphabet_size() != k) {
      r.error("kind", fmt::format("member alphabet {} differs from the experiment alphabet {}", src->alphabet_size(), k));
      return std::nullopt;
    }
    return WordModel::source(*src);
  }
  r.error("kind", "expected one of bernoulli, markov, kt, markov-kt, uniform, point-mass, source");
  return std::nullopt;
}

FamilyConfig parse_family(Reader r, const std::optional<SymbolicSource>& source, unsigned k) {
  FamilyConfig out;
  if (!r.present()) return out;
  Diagnostics& diags = *r.diagnostics();

  std::optional<LengthWeighting> weighting = LengthWeighting{};
  const auto lw = r.str("length_weighting", false).value_or("log-squared");
  if (lw == "inverse-square") weighting = LengthWeighting::inverse_square();
  else if (lw == "none") weighting.reset();
  else if (lw != "log-squared") r.error("length_weighting", "expected \"log-squared\", \"inverse-square\" or \"none\"");
  const auto r0 = r.num("reserved_empty", false, 0.0, 1.0);
  const auto r1 = r.num("reserved_single", false, 0.0, 1.0);
  if (r0 || r1) {
    if (!weighting) r.error("reserved_empty", "reserved masses need a length weighting");
    else {
      if (r0) weighting->reserved_empty = *r0;
      if (r1) weighting->reserved_single = *r1;
    }
  }

  const bool has_preset = r.has("preset");
  const bool has_members = r.has("members");
  if (has_preset == has_members) {
    r.error("members", "give exactly one of preset and members");
    r.raw("preset", false);
    r.raw("members", false);
    r.finish();
    return out;
  }
  if (has_preset) {
    const auto preset = r.str("preset", true);
    if (preset != "default") {
      r.error("preset", "the only preset is \"default\"");
    } else if (k != 2) {
      r.error("preset", "the default family is binary");
    } else {
      out.mu = guarded(diags, r.path(), [&] { return default_family(weighting); });
      out.label = "default";
    }
    r.finish();
    return out;
  }

  const Json* members = r.raw("members", true);
  if (!members->is_array() || members->empty()) {
    r.error("members", "expected a non-empty array of members");
    r.finish();
    return out;
  }
  std::vector<FamilyMember> parsed;
  bool ok = true;
  double total = 0.0;
  for (std::size_t i = 0; i < members->size(); ++i) {
    Reader m(&(*members)[i], fmt::format("{}/{}", r.path_of("members"), i), &diags);
    if (!(*members)[i].is_object()) {
      diags.push_back({m.path(), "expected an object"});
      ok = false;
      continue;
    }
    auto model = parse_member_model(m, source, k);
    auto weight = m.num("weight", true, 0.0, 1.0);
    if (weight && !(*weight > 0.0)) {
      m.error("weight", "weights must be positive");
      weight.reset();
    }
    m.finish();
    if (weight) total += *weight;
    if (model && weight) parsed.push_back({std::move(*model), *weight});
    else ok = false;
  }
  if (total > 1.0 + 1e-12) {
    diags.push_back({r.path_of("members"), fmt::format("family weights sum to {} > 1", total)});
    ok = false;
  }
  if (ok) {
    out.mu = guarded(diags, r.path(), [&] { return SemiMeasure::mixture(std::move(parsed), weighting); });
    out.label = "custom";
  }
  r.finish();
  return out;
}

std::vector<std::size_t> to_sizes(const std::vector<std::uint64_t>& v) { return {v.begin(), v.end()}; }

bool fits_cap(unsigned k, std::size_t n, std::uint64_t cap) {
  double count = std::pow(static_cast<double>(k), static_cast<double>(n));
  return count <= static_cast<double>(cap);
}

ClassicalConfig parse_classical(Reader& top) {
  Diagnostics& diags = *top.diagnostics();
  ClassicalConfig cfg;
  cfg.cap = top.uint("enumeration_cap", false, 2, std::uint64_t{1} << 24).value_or(kDefaultEnumerationCap);
  cfg.source = parse_source(top.object("source", true));
  const unsigned k = cfg.source ? cfg.source->alphabet_size() : 2;
  cfg.family = parse_family(top.object("family", true), cfg.source, k);

  Reader sections = top.object("sections", true);
  if (!sections.present()) return cfg;
  const bool orbit = cfg.source && !cfg.source->stochastic();
  auto check_cap = [&](Reader& r, const std::string& key, std::size_t n) {
    if (!fits_cap(k, n, cfg.cap))
      r.error(key, fmt::format("resource limit: {}^{} words exceed the enumeration cap {}", k, n, cfg.cap));
  };

  if (sections.has("rate")) {
    Reader r = sections.object("rate", true);
    ClassicalConfig::Rate rate;
    if (auto n = r.uint_list("n", true, 1, std::uint64_t{1} << 20)) rate.n = to_sizes(*n);
    rate.mc_samples = r.uint("mc_samples", false, 2, 1000000).value_or(200);
    rate.tolerance = r.num("tolerance", false, 0.0, 10.0);
    if (cfg.source && cfg.source->stochastic() && !cfg.source->ergodic())
      r.error("n", "the rate section needs an ergodic source");
    r.finish();
    cfg.rate = rate;
  }
  if (sections.has("per_sequence")) {
    Reader r = sections.object("per_sequence", true);
    ClassicalConfig::PerSequence ps;
    if (auto n = r.uint_list("n", true, 1, std::uint64_t{1} << 22)) ps.n = to_sizes(*n);
    ps.sequences = r.uint("sequences", false, 1, 100000).value_or(100);
    ps.tolerance = r.num("tolerance", false, 0.0, 10.0);
    ps.min_fraction = r.num("min_fraction", false, 0.0, 1.0).value_or(0.95);
    ps.agreement = r.boolean("agreement", false).value_or(!orbit);
    ps.mc_samples = r.uint("mc_samples", false, 2, 1000000).value_or(200);
    if (orbit && ps.agreement) r.error("agreement", "orbit sources have a single sequence; disable agreement");
    r.finish();
    cfg.per_sequence = ps;
  }
  if (sections.has("lemma_bound")) {
    Reader r = sections.object("lemma_bound", true);
    ClassicalConfig::Lemma lemma;
    std::vector<std::uint64_t> def;
    for (std::uint64_t n = 2; n <= 12; ++n) def.push_back(n);
    if (r.has("n")) {
      if (auto n = r.uint_list("n", true, 2, 64)) def = *n;
    }
    lemma.n = to_sizes(def);
    for (auto n : lemma.n) check_cap(r, "n", n);
    if (orbit) r.error("n", "the bound needs exact block probabilities; orbit sources are empirical");
    r.finish();
    cfg.lemma = lemma;
  }
  if (sections.has("counting")) {
    Reader r = sections.object("counting", true);
    ClassicalConfig::Counting c;
    c.n_max = r.uint("n_max", false, 1, 64).value_or(12);
    c.c_max = static_cast<unsigned>(r.uint("c_max", false, 1, 60).value_or(12));
    check_cap(r, "n_max", c.n_max);
    r.finish();
    cfg.counting = c;
  }
  if (sections.has("typical_sets")) {
    Reader r = sections.object("typical_sets", true);
    ClassicalConfig::Typical t;
    if (auto n = r.uint_list("n", true, 1, 64)) t.n = to_sizes(*n);
    if (auto e = r.num_list("epsilons", true, 0.0, 1.0)) t.epsilons = *e;
    for (double e : t.epsilons)
      if (!(e > 0.0)) r.error("epsilons", "epsilon must be positive");
    for (auto n : t.n) check_cap(r, "n", n);
    r.finish();
    cfg.typical = t;
  }
  sections.finish();
  if (!cfg.rate && !cfg.per_sequence && !cfg.lemma && !cfg.counting && !cfg.typical)
    diags.push_back({sections.path(), "no sections selected"});
  return cfg;
}

std::optional<ChainState> parse_state(const Json* j, const std::string& path, Diagnostics& diags) {
  if (!j) return std::nullopt;
  if (!j->is_object()) {
    diags.push_back({path, "expected a state object"});
    return std::nullopt;
  }
  Reader r(j, path, &diags);
  std::optional<ChainState> out;
  const auto type = r.str("type", true);
  if (type == "iid-product") {
    if (auto m = complex_matrix(r.raw("single_site", true), r.path_of("single_site"), diags))
      out = guarded(diags, r.path_of("single_site"), [&] { return ChainState::iid_product(*m); });
  } else if (type == "mixture-of-products") {
    const Json* comps = r.raw("components", true);
    auto weights = r.num_list("weights", true, 0.0, 1.0);
    if (comps && weights) {
      if (!comps->is_array() || comps->size() != weights->size() || comps->empty()) {
        r.error("components", "expected one 2x2 matrix per weight");
      } else {
        std::vector<linalg::Matrix> ms;
        bool ok = true;
        for (std::size_t i = 0; i < comps->size(); ++i) {
          auto m = complex_matrix(&(*comps)[i], fmt::format("{}/{}", r.path_of("components"), i), diags);
          if (m) ms.push_back(*m);
          else ok = false;
        }
        if (ok) out = guarded(diags, r.path(), [&] { return ChainState::mixture_of_products(ms, *weights); });
      }
    }
  } else if (type) {
    r.error("type", "expected \"iid-product\" or \"mixture-of-products\"");
  }
  r.finish();
  return out;
}

std::optional<UniversalSemiDensity> parse_quantum_family(Reader r, const std::optional<ChainState>& state) {
  if (!r.present()) return std::nullopt;
  Diagnostics& diags = *r.diagnostics();
  const double tracial = r.num("tracial_weight", false, 0.0, 1.0).value_or(0.0);
  std::vector<UniversalMember> members;
  bool ok = true;
  double total = tracial;
  if (const Json* list = r.raw("members", false)) {
    if (!list->is_array()) {
      r.error("members", "expected an array");
      ok = false;
    } else {
      for (std::size_t i = 0; i < list->size(); ++i) {
        const std::string path = fmt::format("{}/{}", r.path_of("members"), i);
        Reader m(&(*list)[i], path, &diags);
        if (!(*list)[i].is_object()) {
          diags.push_back({path, "expected an object"});
          ok = false;
          continue;
        }
        std::optional<ChainState> s;
        if (const Json* sj = m.raw("state", true)) {
          if (sj->is_string()) {
            if (sj->get<std::string>() != "experiment") m.error("state", "the only state reference is \"experiment\"");
            else if (!state) m.error("state", "the experiment state is missing or invalid");
            else s = state;
          } else {
            s = parse_state(sj, m.path_of("state"), diags);
          }
        }
        auto w = m.num("weight", true, 0.0, 1.0);
        if (w && !(*w > 0.0)) {
          m.error("weight", "weights must be positive");
          w.reset();
        }
        m.finish();
        if (w) total += *w;
        if (s && w) members.push_back({*s, *w});
        else ok = false;
      }
    }
  }
  r.finish();
  if (total > 1.0 + 1e-12) {
    diags.push_back({r.path(), fmt::format("family weights sum to {} > 1", total)});
    return std::nullopt;
  }
  if (!ok) return std::nullopt;
  auto family = guarded(diags, r.path(), [&] { return UniversalSemiDensity(members, tracial); });
  if (family) {
    for (unsigned n : {1u, 2u})
      if (!guarded(diags, r.path(), [&] { return family->realize(n).sites; })) return std::nullopt;
  }
  return family;
}

QuantumConfig parse_quantum(Reader& top) {
  Diagnostics& diags = *top.diagnostics();
  QuantumConfig cfg;
  cfg.site_cap = static_cast<unsigned>(top.uint("site_cap", false, 1, kMaxU64).value_or(kDefaultSiteCap));
  if (cfg.site_cap > kDefaultSiteCap) {
    top.error("site_cap", fmt::format("resource limit: the site cap is at most {}", kDefaultSiteCap));
    cfg.site_cap = kDefaultSiteCap;
  }
  cfg.warn_threshold = top.num("faithful_warn_threshold", false, 0.0, 1.0).value_or(kFaithfulWarnThreshold);
  cfg.state = parse_state(top.raw("state", true), top.path_of("state"), diags);
  cfg.family = parse_quantum_family(top.object("family", true), cfg.state);

  Reader sections = top.object("sections", true);
  if (!sections.present()) return cfg;
  auto sites = [&](Reader& r, const std::string& key, bool required, unsigned limit) -> std::vector<unsigned> {
    auto list = r.uint_list(key, required, 1, kMaxU64);
    if (!list) return {};
    for (auto n : *list)
      if (n > limit) r.error(key, fmt::format("resource limit: n = {} exceeds the site cap {}", n, limit));
    std::vector<unsigned> out;
    for (auto n : *list) out.push_back(static_cast<unsigned>(std::min<std::uint64_t>(n, limit)));
    return out;
  };
  auto single = [&](Reader& r, const std::string& key, unsigned def, unsigned limit) -> unsigned {
    auto v = r.uint(key, false, 1, kMaxU64).value_or(def);
    if (v > limit) {
      r.error(key, fmt::format("resource limit: {} exceeds the site cap {}", v, limit));
      return limit;
    }
    return static_cast<unsigned>(v);
  };
  auto epsilons = [&](Reader& r, const std::string& key, bool required) -> std::vector<double> {
    auto e = r.num_list(key, required, 0.0, 1.0);
    if (!e) return {};
    for (double x : *e)
      if (!(x > 0.0)) r.error(key, "epsilon must be positive");
    return *e;
  };
  const bool faithful = cfg.state && cfg.state->faithful();

  if (sections.has("items_1_3")) {
    Reader r = sections.object("items_1_3", true);
    QuantumConfig::Items it;
    it.n = sites(r, "n", true, cfg.site_cap);
    it.epsilons = epsilons(r, "epsilons", true);
    it.samples = r.uint("samples", false, 0, 100000).value_or(200);
    if (cfg.state && !faithful) r.error("n", "typicality checks need a faithful state");
    r.finish();
    cfg.items = it;
  }
  if (sections.has("item_4")) {
    Reader r = sections.object("item_4", true);
    QuantumConfig::Item4 it;
    it.n = sites(r, "n", true, cfg.site_cap);
    it.epsilons = epsilons(r, "epsilons", true);
    it.samples = r.uint("samples", false, 0, 100000).value_or(200);
    it.max_final_slack = r.num("max_final_slack", false, 0.0, 100.0);
    if (cfg.state && !faithful) r.error("n", "typicality checks need a faithful state");
    if (cfg.state && cfg.family) {
      bool member = false;
      for (const auto& m : cfg.family->members())
        if (m.state.describe() == cfg.state->describe()) member = true;
      if (!member) r.error("n", "item 4 needs the experiment state in the family");
    }
    r.finish();
    cfg.item4 = it;
  }
  if (sections.has("entropy_rate")) {
    Reader r = sections.object("entropy_rate", true);
    cfg.entropy_rate = QuantumConfig::EntropyRate{single(r, "n_max", 10, cfg.site_cap)};
    r.finish();
  }
  if (sections.has("compatibility")) {
    Reader r = sections.object("compatibility", true);
    cfg.compatibility = QuantumConfig::Compatibility{single(r, "n_max", 11, cfg.site_cap - 1)};
    r.finish();
  }
  if (sections.has("gacs_inequality")) {
    Reader r = sections.object("gacs_inequality", true);
    QuantumConfig::GacsInequality g;
    g.pairs = r.uint("pairs", false, 1, 100000).value_or(100);
    g.dim_min = static_cast<unsigned>(r.uint("dim_min", false, 2, 256).value_or(2));
    g.dim_max = static_cast<unsigned>(r.uint("dim_max", false, 2, 256).value_or(16));
    if (g.dim_min > g.dim_max) r.error("dim_max", "dim_max must not be below dim_min");
    r.finish();
    cfg.gacs_inequality = g;
  }
  if (sections.has("dominance")) {
    Reader r = sections.object("dominance", true);
    cfg.dominance = QuantumConfig::Dominance{single(r, "n_max", 10, std::min(cfg.site_cap, 10u))};
    r.finish();
  }
  if (sections.has("quasi_monotonicity")) {
    Reader r = sections.object("quasi_monotonicity", true);
    QuantumConfig::Quasi q;
    q.n_base = single(r, "n_base", 3, 10);
    q.steps = static_cast<unsigned>(r.uint("steps", false, 2, 64).value_or(6));
    if (q.n_base + q.steps - 1 > 10) r.error("steps", "resource limit: the sequence would exceed 10 sites");
    r.finish();
    cfg.quasi = q;
  }
  if (sections.has("classical_reduction")) {
    Reader r = sections.object("classical_reduction", true);
    QuantumConfig::Reduction red;
    red.n_max = single(r, "n_max", 12, cfg.site_cap);
    red.epsilons = epsilons(r, "epsilons", true);
    if (cfg.state) {
      const auto* p = std::get_if<IIDProduct>(&cfg.state->kind());
      if (!p || !linalg::is_diagonal(p->single_site)) r.error("n_max", "classical reduction needs a diagonal product state");
    }
    r.finish();
    cfg.reduction = red;
  }
  if (sections.has("transport")) {
    Reader r = sections.object("transport", true);
    cfg.transport = QuantumConfig::Transport{sites(r, "n", true, std::min(cfg.site_cap, 10u))};
    if (cfg.state && !faithful) r.error("n", "spectral transport needs a faithful state");
    r.finish();
  }
  sections.finish();
  if (!cfg.items && !cfg.item4 && !cfg.entropy_rate && !cfg.compatibility && !cfg.gacs_inequality && !cfg.dominance &&
      !cfg.quasi && !cfg.reduction && !cfg.transport)
    diags.push_back({sections.path(), "no sections selected"});
  return cfg;
}

SelftestConfig parse_selftest(Reader& top) {
  SelftestConfig cfg;
  Reader sections = top.object("sections", true);
  if (!sections.present()) return cfg;
  if (sections.has("tau")) {
    Reader r = sections.object("tau", true);
    cfg.tau_max_length = static_cast<unsigned>(r.uint("max_length", false, 0, 20).value_or(16));
    r.finish();
  }
  if (sections.has("pairing")) {
    Reader r = sections.object("pairing", true);
    cfg.pairing_limit = r.uint("limit", false, 1, std::uint64_t{1} << 20).value_or(65536);
    r.finish();
  }
  if (sections.has("integers")) {
    Reader r = sections.object("integers", true);
    cfg.integer_range = static_cast<std::int64_t>(r.uint("range", false, 0, 1000000).value_or(10000));
    r.finish();
  }
  if (sections.has("algebraic")) {
    Reader r = sections.object("algebraic", true);
    SelftestConfig::Algebraic a;
    a.samples = r.uint("samples", false, 1, 100000).value_or(100);
    a.max_degree = static_cast<unsigned>(r.uint("max_degree", false, 1, 16).value_or(4));
    a.max_coefficient = static_cast<std::int64_t>(r.uint("max_coefficient", false, 1, 1000000).value_or(50));
    r.finish();
    cfg.algebraic = a;
  }
  if (sections.has("elementary")) {
    Reader r = sections.object("elementary", true);
    SelftestConfig::Elementary e;
    e.samples = r.uint("samples", false, 1, 100000).value_or(100);
    e.max_terms = r.uint("max_terms", false, 1, 64).value_or(6);
    e.max_length = r.uint("max_length", false, 0, 8).value_or(3);
    r.finish();
    cfg.elementary = e;
  }
  sections.finish();
  if (!cfg.tau_max_length && !cfg.pairing_limit && !cfg.integer_range && !cfg.algebraic && !cfg.elementary)
    top.diagnostics()->push_back({sections.path(), "no sections selected"});
  return cfg;
}

AuditConfig parse_audit(Reader& top) {
  AuditConfig cfg;
  cfg.family = parse_family(top.object("family", true), std::nullopt, 2);
  Reader sections = top.object("sections", true);
  if (!sections.present()) return cfg;
  if (sections.has("normalization")) {
    Reader r = sections.object("normalization", true);
    cfg.normalization_n_max = r.uint("n_max", false, 0, 16).value_or(10);
    r.finish();
  }
  if (sections.has("kt_martingale")) {
    Reader r = sections.object("kt_martingale", true);
    cfg.martingale_n_max = r.uint("n_max", false, 1, 16).value_or(12);
    r.finish();
  }
  if (sections.has("dominance")) {
    Reader r = sections.object("dominance", true);
    cfg.dominance_n_max = r.uint("n_max", false, 0, 16).value_or(12);
    r.finish();
  }
  if (sections.has("counting")) {
    Reader r = sections.object("counting", true);
    ClassicalConfig::Counting c;
    c.n_max = r.uint("n_max", false, 1, 20).value_or(12);
    c.c_max = static_cast<unsigned>(r.uint("c_max", false, 1, 60).value_or(12));
    r.finish();
    cfg.counting = c;
  }
  if (sections.has("kt_redundancy")) {
    Reader r = sections.object("kt_redundancy", true);
    AuditConfig::Redundancy red;
    red.p_one = r.num("p_one", false, 0.0, 1.0).value_or(0.3);
    red.n = {256, 1024, 4096};
    if (r.has("n"))
      if (auto n = r.uint_list("n", true, 1, std::uint64_t{1} << 22)) red.n = to_sizes(*n);
    red.samples = r.uint("samples", false, 1, 100000).value_or(100);
    r.finish();
    cfg.redundancy = red;
  }
  sections.finish();
  if (!cfg.normalization_n_max && !cfg.martingale_n_max && !cfg.dominance_n_max && !cfg.counting && !cfg.redundancy)
    top.diagnostics()->push_back({sections.path(), "no sections selected"});
  return cfg;
}

}  // namespace

Reader::Reader(const Json* node, std::string path, Diagnostics* diags)
    : node_(node), path_(std::move(path)), diags_(diags) {
  if (node_ && !node_->is_object()) {
    diags_->push_back({path_.empty() ? "/" : path_, fmt::format("expected an object, found {}", json_type(*node_))});
    node_ = nullptr;
  }
}

bool Reader::has(const std::string& key) const { return node_ && node_->contains(key); }

void Reader::error(const std::string& key, const std::string& message) const {
  diags_->push_back({path_of(key), message});
}

const Json* Reader::raw(const std::string& key, bool required) {
  used_.push_back(key);
  if (!node_) return nullptr;
  auto it = node_->find(key);
  if (it == node_->end()) {
    if (required) error(key, "missing required field");
    return nullptr;
  }
  return &*it;
}

std::optional<std::string> Reader::str(const std::string& key, bool required) {
  const Json* j = raw(key, required);
  if (!j) return std::nullopt;
  if (!j->is_string()) {
    error(key, fmt::format("expected a string, found {}", json_type(*j)));
    return std::nullopt;
  }
  return j->get<std::string>();
}

std::optional<double> Reader::num(const std::string& key, bool required, double lo, double hi) {
  const Json* j = raw(key, required);
  if (!j) return std::nullopt;
  auto v = scalar_value(*j, path_of(key), *diags_);
  if (!v) return std::nullopt;
  if (!(*v >= lo && *v <= hi)) {
    error(key, fmt::format("value {} outside [{}, {}]", *v, lo, hi));
    return std::nullopt;
  }
  return v;
}

std::optional<std::uint64_t> Reader::uint(const std::string& key, bool required, std::uint64_t lo, std::uint64_t hi) {
  const Json* j = raw(key, required);
  if (!j) return std::nullopt;
  if (!j->is_number_unsigned() && !(j->is_number_integer() && j->get<std::int64_t>() >= 0)) {
    error(key, fmt::format("expected a non-negative integer, found {}", j->dump()));
    return std::nullopt;
  }
  const auto v = j->get<std::uint64_t>();
  if (v < lo || v > hi) {
    error(key, fmt::format("value {} outside [{}, {}]", v, lo, hi));
    return std::nullopt;
  }
  return v;
}

std::optional<bool> Reader::boolean(const std::string& key, bool required) {
  const Json* j = raw(key, required);
  if (!j) return std::nullopt;
  if (!j->is_boolean()) {
    error(key, fmt::format("expected true or false, found {}", json_type(*j)));
    return std::nullopt;
  }
  return j->get<bool>();
}

std::optional<std::vector<double>> Reader::num_list(const std::string& key, bool required, double lo, double hi) {
  const Json* j = raw(key, required);
  if (!j) return std::nullopt;
  if (!j->is_array() || j->empty()) {
    error(key, "expected a non-empty array");
    return std::nullopt;
  }
  std::vector<double> out;
  bool ok = true;
  for (std::size_t i = 0; i < j->size(); ++i) {
    const std::string p = fmt::format("{}/{}", path_of(key), i);
    auto v = scalar_value((*j)[i], p, *diags_);
    if (!v) {
      ok = false;
    } else if (!(*v >= lo && *v <= hi)) {
      diags_->push_back({p, fmt::format("value {} outside [{}, {}]", *v, lo, hi)});
      ok = false;
    } else {
      out.push_back(*v);
    }
  }
  if (!ok) return std::nullopt;
  return out;
}

std::optional<std::vector<std::uint64_t>> Reader::uint_list(const std::string& key, bool required, std::uint64_t lo,
                                                            std::uint64_t hi) {
  const Json* j = raw(key, required);
  if (!j) return std::nullopt;
  if (!j->is_array() || j->empty()) {
    error(key, "expected a non-empty array");
    return std::nullopt;
  }
  std::vector<std::uint64_t> out;
  bool ok = true;
  for (std::size_t i = 0; i < j->size(); ++i) {
    const Json& x = (*j)[i];
    const std::string p = fmt::format("{}/{}", path_of(key), i);
    if (!x.is_number_unsigned() && !(x.is_number_integer() && x.get<std::int64_t>() >= 0)) {
      diags_->push_back({p, "expected a non-negative integer"});
      ok = false;
      continue;
    }
    const auto v = x.get<std::uint64_t>();
    if (v < lo || v > hi) {
      diags_->push_back({p, fmt::format("value {} outside [{}, {}]", v, lo, hi)});
      ok = false;
      continue;
    }
    out.push_back(v);
  }
  if (!ok) return std::nullopt;
  return out;
}

Reader Reader::object(const std::string& key, bool required) {
  const Json* j = raw(key, required);
  return Reader(j, path_of(key), diags_);
}

void Reader::finish() const {
  if (!node_) return;
  for (auto it = node_->begin(); it != node_->end(); ++it)
    if (std::find(used_.begin(), used_.end(), it.key()) == used_.end()) error(it.key(), "unknown key");
}

ParsedConfig parse(const Json& config, Diagnostics& diags) {
  ParsedConfig out;
  if (!config.is_object()) {
    diags.push_back({"/", "config must be a JSON object"});
    return out;
  }
  Reader top(&config, "", &diags);
  const auto kind = top.str("kind", true);
  if (kind) {
    if (auto k = parse_kind(*kind)) out.common.kind = *k;
    else top.error("kind", "expected classical-brudno, quantum-brudno, encoding-selftest or semimeasure-audit");
  }
  if (auto name = top.str("name", true)) {
    const bool ok = !name->empty() && std::all_of(name->begin(), name->end(), [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
    });
    if (!ok) top.error("name", "names use letters, digits, '-', '_' and '.' only");
    out.common.name = *name;
  }
  out.common.description = top.str("description", false).value_or("");
  out.common.seed = top.uint("seed", true, 0, kMaxU64).value_or(0);
  if (auto base = top.num("log_base", false, 0.0, 1e9); base && *base != 2.0)
    top.error("log_base", "all logarithms are base 2");

  if (kind && parse_kind(*kind)) {
    switch (out.common.kind) {
      case Kind::ClassicalBrudno: out.classical = parse_classical(top); break;
      case Kind::QuantumBrudno: out.quantum = parse_quantum(top); break;
      case Kind::EncodingSelftest: out.selftest = parse_selftest(top); break;
      case Kind::SemimeasureAudit: out.audit = parse_audit(top); break;
    }
  }
  top.finish();
  return out;
}

}  // namespace detail

ConfigError::ConfigError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error([&] {
        std::string s = "invalid config:";
        for (const auto& d : diagnostics) s += fmt::format("\n  {}: {}", d.path.empty() ? "/" : d.path, d.message);
        return s;
      }()),
      diagnostics_(std::move(diagnostics)) {}

std::vector<Diagnostic> validate(const Json& config) {
  std::vector<Diagnostic> diags;
  detail::parse(config, diags);
  return diags;
}

Json load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({{"/", fmt::format("cannot open {}", path.string())}});
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw ConfigError({{"/", fmt::format("JSON syntax error: {}", e.what())}});
  }
}

}  // namespace brudno::experiment
