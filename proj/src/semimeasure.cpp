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

#include "brudno/semimeasure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/core.h>

#include "brudno/error.hpp"

namespace brudno {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kWeightTolerance = 1e-12;

// log2(sum_i 2^x_i)
double log2_sum_exp2(const std::vector<double>& xs) {
  double m = kNegInf;
  for (double x : xs) m = std::max(m, x);
  if (m == kNegInf) return kNegInf;
  double acc = 0.0;
  for (double x : xs) acc += std::exp2(x - m);
  return m + std::log2(acc);
}

void check_alphabet(const SymbolString& s, unsigned k) {
  if (s.alphabet_size() != k)
    throw Error(ErrorKind::InvalidInput,
                fmt::format("word over alphabet {} given to a model over alphabet {}", s.alphabet_size(), k));
}

std::vector<double> kt_profile(const SymbolString& s, unsigned k) {
  std::vector<double> out(s.size() + 1, 0.0);
  std::vector<double> counts(k, 0.0);
  const double half_k = 0.5 * k;
  for (std::size_t t = 0; t < s.size(); ++t) {
    const Symbol a = s[t];
    out[t + 1] = out[t] + std::log2((counts[a] + 0.5) / (static_cast<double>(t) + half_k));
    counts[a] += 1.0;
  }
  return out;
}

std::vector<double> markov_kt_profile(const SymbolString& s, unsigned k) {
  std::vector<double> out(s.size() + 1, 0.0);
  if (s.empty()) return out;
  out[1] = -std::log2(static_cast<double>(k));
  std::vector<double> counts(static_cast<std::size_t>(k) * k, 0.0);
  std::vector<double> totals(k, 0.0);
  const double half_k = 0.5 * k;
  for (std::size_t t = 1; t < s.size(); ++t) {
    const Symbol ctx = s[t - 1];
    const Symbol a = s[t];
    double& c = counts[static_cast<std::size_t>(ctx) * k + a];
    out[t + 1] = out[t] + std::log2((c + 0.5) / (totals[ctx] + half_k));
    c += 1.0;
    totals[ctx] += 1.0;
  }
  return out;
}

std::vector<double> source_profile(const SymbolicSource& source, const SymbolString& s) {
  std::vector<double> out(s.size() + 1, 0.0);
  if (const auto* b = std::get_if<BernoulliSource>(&source.model())) {
    for (std::size_t t = 0; t < s.size(); ++t) out[t + 1] = out[t] + std::log2(b->probabilities[s[t]]);
    return out;
  }
  const auto& m = std::get<MarkovSource>(source.model());
  if (s.empty()) return out;
  out[1] = std::log2(m.stationary(s[0]));
  for (std::size_t t = 1; t < s.size(); ++t) out[t + 1] = out[t] + std::log2(m.transition(s[t - 1], s[t]));
  return out;
}

// Sum of 1/(m log2^2 m) for m >= 2: direct to 2^20, Euler-Maclaurin tail.
double log_squared_delta_sum() {
  static const double value = [] {
    constexpr double cutoff = 1 << 20;
    double head = 0.0;
    for (double m = 2.0; m < cutoff; m += 1.0) {
      const double l = std::log2(m);
      head += 1.0 / (m * l * l);
    }
    const double l = std::log2(cutoff);
    const double f = 1.0 / (cutoff * l * l);
    const double df = -1.0 / (cutoff * cutoff * l * l) - 2.0 / (cutoff * cutoff * l * l * l * std::numbers::ln2);
    const double integral = std::numbers::ln2 / l;
    return head + integral + 0.5 * f - df / 12.0;
  }();
  return value;
}

}  // namespace

WordModel WordModel::kt(unsigned alphabet_size) {
  if (alphabet_size < 2) throw Error(ErrorKind::InvalidInput, "alphabet needs at least two symbols");
  return WordModel(KTModel{}, alphabet_size);
}

WordModel WordModel::markov_kt(unsigned order, unsigned alphabet_size) {
  if (order != 1) throw Error(ErrorKind::Unsupported, fmt::format("Markov KT of order {} is not supported", order));
  if (alphabet_size < 2) throw Error(ErrorKind::InvalidInput, "alphabet needs at least two symbols");
  return WordModel(MarkovKTModel{}, alphabet_size);
}

WordModel WordModel::point_mass(SymbolString word) {
  const unsigned k = word.alphabet_size();
  return WordModel(PointMassModel{std::move(word)}, k);
}

WordModel WordModel::uniform(unsigned alphabet_size) {
  if (alphabet_size < 2) throw Error(ErrorKind::InvalidInput, "alphabet needs at least two symbols");
  return WordModel(UniformModel{}, alphabet_size);
}

WordModel WordModel::source(SymbolicSource source) {
  if (!source.stochastic())
    throw Error(ErrorKind::InvalidInput, "orbit encoders have no exact word probabilities");
  const unsigned k = source.alphabet_size();
  return WordModel(SourceModel{std::move(source)}, k);
}

std::string WordModel::describe() const {
  return std::visit(
      [](const auto& m) -> std::string {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, KTModel>) return "kt";
        else if constexpr (std::is_same_v<T, MarkovKTModel>) return "markov-kt(1)";
        else if constexpr (std::is_same_v<T, PointMassModel>) return "point-mass(" + m.word.to_string() + ")";
        else if constexpr (std::is_same_v<T, UniformModel>) return "uniform";
        else return m.source.describe();
      },
      kind_);
}

std::vector<double> WordModel::prefix_log2_profile(const SymbolString& s) const {
  check_alphabet(s, alphabet_);
  return std::visit(
      [&](const auto& m) -> std::vector<double> {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, KTModel>) {
          return kt_profile(s, alphabet_);
        } else if constexpr (std::is_same_v<T, MarkovKTModel>) {
          return markov_kt_profile(s, alphabet_);
        } else if constexpr (std::is_same_v<T, PointMassModel>) {
          std::vector<double> out(s.size() + 1, kNegInf);
          const std::size_t len = m.word.size();
          if (len <= s.size() && std::equal(m.word.symbols().begin(), m.word.symbols().end(), s.symbols().begin()))
            out[len] = 0.0;
          return out;
        } else if constexpr (std::is_same_v<T, UniformModel>) {
          std::vector<double> out(s.size() + 1);
          const double step = std::log2(static_cast<double>(alphabet_));
          for (std::size_t t = 0; t <= s.size(); ++t) out[t] = -step * static_cast<double>(t);
          return out;
        } else {
          return source_profile(m.source, s);
        }
      },
      kind_);
}

double WordModel::log2_probability(const SymbolString& s) const {
  if (const auto* p = std::get_if<PointMassModel>(&kind_)) {
    check_alphabet(s, alphabet_);
    return s == p->word ? 0.0 : kNegInf;
  }
  return prefix_log2_profile(s).back();
}

double WordModel::probability(const SymbolString& s) const { return std::exp2(log2_probability(s)); }

double kt_probability(const SymbolString& s) {
  if (s.alphabet_size() != 2) throw Error(ErrorKind::InvalidInput, "kt_probability expects a binary word");
  return std::exp2(kt_profile(s, 2).back());
}

double markov_kt_probability(const SymbolString& s, unsigned order) {
  if (order != 1) throw Error(ErrorKind::Unsupported, fmt::format("Markov KT of order {} is not supported", order));
  if (s.alphabet_size() != 2) throw Error(ErrorKind::InvalidInput, "markov_kt_probability expects a binary word");
  return std::exp2(markov_kt_profile(s, 2).back());
}

double LengthWeighting::log2_delta(std::size_t n) const {
  if (n < 2) throw Error(ErrorKind::InvalidInput, "delta(n) is defined for n >= 2");
  const double x = static_cast<double>(n);
  if (delta == DeltaKind::InverseSquare) return -2.0 * std::log2(x);
  return -std::log2(x) - 2.0 * std::log2(std::log2(x));
}

double LengthWeighting::delta_sum() const {
  if (delta == DeltaKind::InverseSquare) return std::numbers::pi * std::numbers::pi / 6.0 - 1.0;
  return log_squared_delta_sum();
}

double LengthWeighting::log2_normalizer() const {
  return std::log2(delta_sum() / (1.0 - reserved_empty - reserved_single));
}

double LengthWeighting::log2_lambda(std::size_t n) const {
  if (n == 0) return reserved_empty > 0.0 ? std::log2(reserved_empty) : kNegInf;
  if (n == 1) return reserved_single > 0.0 ? std::log2(reserved_single) : kNegInf;
  return log2_delta(n) - log2_normalizer();
}

double LengthWeighting::lambda(std::size_t n) const { return std::exp2(log2_lambda(n)); }

SemiMeasure SemiMeasure::mixture(std::vector<FamilyMember> members, std::optional<LengthWeighting> weighting) {
  if (members.empty()) throw Error(ErrorKind::InvalidInput, "a mixture needs at least one member");
  const unsigned k = members.front().model.alphabet_size();
  double total = 0.0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto& m = members[i];
    if (!(m.weight > 0.0))
      throw Error(ErrorKind::InvalidInput, fmt::format("member {} ({}) has non-positive weight", i, m.model.describe()));
    if (m.model.alphabet_size() != k) throw Error(ErrorKind::InvalidInput, "mixture members use different alphabets");
    total += m.weight;
  }
  if (total > 1.0 + kWeightTolerance)
    throw Error(ErrorKind::InvalidInput, fmt::format("mixture weights sum to {:.17g} > 1", total));
  if (weighting) {
    const double r0 = weighting->reserved_empty;
    const double r1 = weighting->reserved_single;
    if (r0 < 0.0 || r1 < 0.0 || r0 + r1 >= 1.0)
      throw Error(ErrorKind::InvalidInput, "reserved length masses must be non-negative with sum < 1");
  }
  return SemiMeasure(std::move(members), weighting, k);
}

SemiMeasure SemiMeasure::single(WordModel model, std::optional<LengthWeighting> weighting) {
  std::vector<FamilyMember> m;
  m.push_back({std::move(model), 1.0});
  return mixture(std::move(m), weighting);
}

SemiMeasure SemiMeasure::length_weighted(WordModel model, LengthWeighting weighting) {
  return single(std::move(model), weighting);
}

double SemiMeasure::total_weight() const {
  double total = 0.0;
  for (const auto& m : members_) total += m.weight;
  return total;
}

std::string SemiMeasure::describe() const {
  std::string s = "mixture[";
  for (std::size_t i = 0; i < members_.size(); ++i)
    s += fmt::format("{}{}:{:.6g}", i ? ", " : "", members_[i].model.describe(), members_[i].weight);
  s += "]";
  if (weighting_) s += weighting_->delta == DeltaKind::LogSquared ? " x lambda(log-squared)" : " x lambda(inverse-square)";
  return s;
}

SemiMeasure SemiMeasure::member(std::size_t k) const {
  if (k >= members_.size()) throw Error(ErrorKind::InvalidInput, "member index out of range");
  return single(members_[k].model, weighting_);
}

double SemiMeasure::log2_value(const SymbolString& s) const {
  check_alphabet(s, alphabet_);
  std::vector<double> terms;
  terms.reserve(members_.size());
  for (const auto& m : members_) terms.push_back(std::log2(m.weight) + m.model.log2_probability(s));
  double v = log2_sum_exp2(terms);
  if (weighting_) v += weighting_->log2_lambda(s.size());
  return v;
}

double SemiMeasure::value(const SymbolString& s) const { return std::exp2(log2_value(s)); }

std::vector<double> SemiMeasure::prefix_log2_values(const SymbolString& s,
                                                    const std::vector<std::size_t>& lengths) const {
  check_alphabet(s, alphabet_);
  for (std::size_t n : lengths)
    if (n > s.size()) throw Error(ErrorKind::InvalidInput, "prefix length exceeds the word");
  std::vector<std::vector<double>> profiles;
  profiles.reserve(members_.size());
  for (const auto& m : members_) profiles.push_back(m.model.prefix_log2_profile(s));
  std::vector<double> out;
  out.reserve(lengths.size());
  std::vector<double> terms(members_.size());
  for (std::size_t n : lengths) {
    for (std::size_t k = 0; k < members_.size(); ++k) terms[k] = std::log2(members_[k].weight) + profiles[k][n];
    double v = log2_sum_exp2(terms);
    if (weighting_) v += weighting_->log2_lambda(n);
    out.push_back(v);
  }
  return out;
}

SemiMeasure default_family(std::optional<LengthWeighting> weighting) {
  std::vector<WordModel> models;
  for (int j = 1; j <= 19; ++j) models.push_back(WordModel::source(SymbolicSource::bernoulli_binary(0.05 * j)));
  models.push_back(WordModel::markov_kt(1, 2));
  models.push_back(WordModel::kt(2));
  double raw = 0.0;
  for (std::size_t i = 0; i < models.size(); ++i) raw += std::exp2(-static_cast<double>(i));
  std::vector<FamilyMember> members;
  for (std::size_t i = 0; i < models.size(); ++i)
    members.push_back({std::move(models[i]), 0.5 * std::exp2(-static_cast<double>(i)) / raw});
  return SemiMeasure::mixture(std::move(members), weighting);
}

double complexity_surrogate(const SemiMeasure& mu, const SymbolString& s) {
  const double v = mu.log2_value(s);
  if (v == kNegInf)
    throw Error(ErrorKind::PositivityViolation, fmt::format("mu('{}') = 0", s.to_string()));
  return -v;
}

DominanceReport dominance_check(const SemiMeasure& mu, const SemiMeasure& nu, double w, std::size_t n_max,
                                std::uint64_t cap) {
  if (mu.alphabet_size() != nu.alphabet_size())
    throw Error(ErrorKind::InvalidInput, "dominance check across different alphabets");
  DominanceReport report;
  report.weight = w;
  report.worst_ratio = std::numeric_limits<double>::infinity();
  const double log2_w = std::log2(w);
  for (std::size_t n = 0; n <= n_max; ++n) {
    for_each_word(mu.alphabet_size(), n, cap, [&](const SymbolString& s) {
      ++report.words_checked;
      const double lnu = nu.log2_value(s);
      if (lnu == kNegInf) return;
      const double lmu = mu.log2_value(s);
      report.worst_ratio = std::min(report.worst_ratio, std::exp2(lmu - lnu));
      if (lmu < log2_w + lnu - 1e-9 && report.pass) {
        report.pass = false;
        report.witness = s;
      }
    });
  }
  return report;
}

}  // namespace brudno
