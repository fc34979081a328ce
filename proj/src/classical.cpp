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

#include "brudno/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/core.h>

#include "brudno/error.hpp"

namespace brudno {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool enumerable(unsigned k, std::size_t n, std::uint64_t cap) {
  try {
    word_count(k, n, cap);
    return true;
  } catch (const Error&) {
    return false;
  }
}

double checked_surrogate(const SemiMeasure& mu, const SymbolString& s) {
  const double v = mu.log2_value(s);
  if (v == kNegInf)
    throw Error(ErrorKind::PositivityViolation, fmt::format("mu vanishes on '{}' which has positive probability", s.to_string()));
  return -v;
}

std::size_t entropy_block_length(unsigned k, std::uint64_t cap) {
  // Largest n with k^n <= min(cap, 2^12), for empirical rate estimates.
  const std::uint64_t limit = std::min<std::uint64_t>(cap, 4096);
  std::size_t n = 1;
  std::uint64_t count = k;
  while (count * k <= limit) {
    count *= k;
    ++n;
  }
  return n;
}

bool same_source(const SymbolicSource& a, const SymbolicSource& b) {
  constexpr double tol = 1e-12;
  if (a.alphabet_size() != b.alphabet_size()) return false;
  if (const auto* x = std::get_if<BernoulliSource>(&a.model())) {
    const auto* y = std::get_if<BernoulliSource>(&b.model());
    if (!y) return false;
    for (std::size_t i = 0; i < x->probabilities.size(); ++i)
      if (std::abs(x->probabilities[i] - y->probabilities[i]) > tol) return false;
    return true;
  }
  if (const auto* x = std::get_if<MarkovSource>(&a.model())) {
    const auto* y = std::get_if<MarkovSource>(&b.model());
    return y && (x->transition - y->transition).cwiseAbs().maxCoeff() <= tol;
  }
  return false;
}

}  // namespace

BlockComplexity gacs_block_complexity(const SymbolicSource& source, const SemiMeasure& mu, std::size_t n,
                                      const SamplingOptions& options) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "block length must be at least 1");
  if (source.alphabet_size() != mu.alphabet_size())
    throw Error(ErrorKind::InvalidInput, "source and semi-measure use different alphabets");
  const unsigned k = source.alphabet_size();
  BlockComplexity out;
  out.n = n;

  if (enumerable(k, n, options.cap)) {
    const BlockDistribution dist = block_distribution(source, n, options.cap);
    double g = 0.0;
    for (std::uint64_t code = 0; code < dist.probabilities.size(); ++code) {
      const double p = dist.probabilities[code];
      if (p <= 0.0) continue;
      g += p * checked_surrogate(mu, word_from_code(code, n, k));
    }
    out.value = g;
    out.exact = true;
    out.samples = dist.probabilities.size();
    return out;
  }

  if (options.samples < 2) throw Error(ErrorKind::InvalidInput, "Monte-Carlo estimate needs at least two samples");
  std::vector<double> values;
  values.reserve(options.samples);
  if (const auto* orbit = std::get_if<OrbitSource>(&source.model())) {
    const std::size_t span = std::max(orbit->orbit_length, options.samples);
    const SymbolString path = encode_orbit(orbit->map, orbit->alpha, orbit->partition, orbit->x0, span + n);
    const std::size_t step = std::max<std::size_t>(1, span / options.samples);
    for (std::size_t i = 0; i < options.samples; ++i) {
      const std::size_t start = i * step;
      std::vector<Symbol> window(path.symbols().begin() + static_cast<std::ptrdiff_t>(start),
                                 path.symbols().begin() + static_cast<std::ptrdiff_t>(start + n));
      values.push_back(checked_surrogate(mu, SymbolString(std::move(window), k)));
    }
  } else {
    for (std::size_t i = 0; i < options.samples; ++i)
      values.push_back(checked_surrogate(mu, sample_path(source, n, options.seed + i)));
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(values.size() - 1);
  out.value = mean;
  out.exact = false;
  out.samples = values.size();
  out.std_error = std::sqrt(var / static_cast<double>(values.size()));
  return out;
}

GacsClassicalReport gacs_rate(const SymbolicSource& source, const SemiMeasure& mu, const std::vector<std::size_t>& n_grid,
                              const SamplingOptions& options) {
  if (source.stochastic() && !source.ergodic())
    throw Error(ErrorKind::InvalidInput, "gacs_rate needs an ergodic source");
  if (n_grid.empty()) throw Error(ErrorKind::InvalidInput, "n grid is empty");
  GacsClassicalReport report;
  for (std::size_t n : n_grid) report.per_n.push_back(gacs_block_complexity(source, mu, n, options));

  if (auto h = closed_form_rate(source)) {
    report.h = *h;
    report.h_closed_form = true;
  } else {
    report.h = ks_entropy_rate(source, entropy_block_length(source.alphabet_size(), options.cap), options.cap).rate_estimate;
  }
  const auto& last = report.per_n.back();
  report.rate_estimate = last.value / static_cast<double>(last.n);
  report.gap = report.rate_estimate - report.h;
  for (std::size_t i = 1; i < report.per_n.size(); ++i) {
    const auto& a = report.per_n[i - 1];
    const auto& b = report.per_n[i];
    const double ra = a.value / static_cast<double>(a.n);
    const double rb = b.value / static_cast<double>(b.n);
    const double slack = 3.0 * (a.std_error / static_cast<double>(a.n) + b.std_error / static_cast<double>(b.n)) + 1e-9;
    if (rb > ra + slack) report.rate_nonincreasing = false;
  }
  return report;
}

std::vector<RatePoint> per_sequence_rate(const SemiMeasure& mu, const SymbolString& s,
                                         const std::vector<std::size_t>& n_grid) {
  for (std::size_t n : n_grid)
    if (n == 0) throw Error(ErrorKind::InvalidInput, "prefix length must be positive");
  const std::vector<double> values = mu.prefix_log2_values(s, n_grid);
  std::vector<RatePoint> out;
  out.reserve(n_grid.size());
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (values[i] == kNegInf)
      throw Error(ErrorKind::PositivityViolation, fmt::format("mu vanishes on the length-{} prefix", n_grid[i]));
    out.push_back({n_grid[i], -values[i] / static_cast<double>(n_grid[i])});
  }
  return out;
}

std::optional<std::size_t> find_source_member(const SemiMeasure& mu, const SymbolicSource& source) {
  const auto& members = mu.members();
  for (std::size_t i = 0; i < members.size(); ++i)
    if (const auto* m = std::get_if<SourceModel>(&members[i].model.kind()))
      if (same_source(m->source, source)) return i;
  return std::nullopt;
}

LemmaBoundCheck lemma_bound_check(const SymbolicSource& source, const SemiMeasure& mu, std::size_t member,
                                  std::size_t n, std::uint64_t cap) {
  if (n < 2) throw Error(ErrorKind::InvalidInput, "the length prior is defined for n >= 2");
  if (member >= mu.members().size()) throw Error(ErrorKind::InvalidInput, "member index out of range");
  const LengthWeighting weighting = mu.weighting().value_or(LengthWeighting{});
  LemmaBoundCheck out;
  out.n = n;
  out.member = member;
  SamplingOptions exact;
  exact.cap = cap;
  if (!enumerable(source.alphabet_size(), n, cap))
    throw Error(ErrorKind::ResourceLimit, fmt::format("k^n exceeds the enumeration cap {}", cap));
  out.g = gacs_block_complexity(source, mu, n, exact).value;
  out.h = shannon_entropy(block_distribution(source, n, cap));
  out.log2_inv_weight = -std::log2(mu.members()[member].weight);
  out.log2_inv_delta = -weighting.log2_delta(n);
  out.log2_normalizer = weighting.log2_normalizer();
  out.bound = out.h + out.log2_inv_weight + out.log2_inv_delta + out.log2_normalizer;
  out.holds = out.g <= out.bound + 1e-9 * std::max(1.0, std::abs(out.bound));
  return out;
}

ClassicalTypicalSets typical_sets(const BlockDistribution& dist, double h, double epsilon, const SemiMeasure& mu,
                                  std::optional<double> threshold_exponent) {
  if (!(epsilon > 0.0)) throw Error(ErrorKind::InvalidInput, "epsilon must be positive");
  if (dist.alphabet_size != mu.alphabet_size())
    throw Error(ErrorKind::InvalidInput, "distribution and semi-measure use different alphabets");
  ClassicalTypicalSets out;
  const double n = static_cast<double>(dist.n);
  out.n = dist.n;
  out.h = h;
  out.epsilon = epsilon;
  out.threshold_exponent = threshold_exponent.value_or(h - 2.0 * epsilon);
  const double lo = -n * (h + epsilon);
  const double hi = -n * (h - epsilon);
  const double threshold = -n * out.threshold_exponent;

  for (std::uint64_t code = 0; code < dist.probabilities.size(); ++code) {
    const double p = dist.probabilities[code];
    const double lp = p > 0.0 ? std::log2(p) : kNegInf;
    const bool in_a = lp >= lo && lp <= hi;
    const bool heavy = mu.log2_value(word_from_code(code, dist.n, dist.alphabet_size)) >= threshold;
    if (heavy) ++out.heavy_count;
    if (in_a) {
      out.a.push_back(code);
      out.a_summary.count++;
      out.a_summary.mass += p;
      if (heavy) {
        out.a_hat.push_back(code);
        out.a_hat_summary.count++;
        out.a_hat_summary.mass += p;
      }
    } else if (heavy) {
      out.a_tilde.push_back(code);
      out.a_tilde_summary.count++;
      out.a_tilde_summary.mass += p;
    }
    if (!heavy) {
      out.b_summary.count++;
      out.b_summary.mass += p;
    }
  }
  out.alpha = out.heavy_count > 0 ? std::log2(static_cast<double>(out.heavy_count)) - n * out.threshold_exponent : kNegInf;
  out.a_hat_bound = std::exp2(n * (out.threshold_exponent - h + epsilon) + out.alpha + 1.0);
  out.a_hat_bound_holds = out.a_hat_summary.mass <= out.a_hat_bound * (1.0 + 1e-12);
  return out;
}

std::vector<CountingCheck> counting_sweep(const SemiMeasure& mu, std::size_t n_max, unsigned c_max, std::uint64_t cap) {
  std::vector<CountingCheck> out;
  std::vector<double> values;
  for (std::size_t n = 1; n <= n_max; ++n) {
    values.clear();
    double mass = 0.0;
    for_each_word(mu.alphabet_size(), n, cap, [&](const SymbolString& s) {
      const double v = mu.log2_value(s);
      values.push_back(v);
      mass += std::exp2(v);
    });
    for (unsigned c = 1; c <= c_max; ++c) {
      CountingCheck check;
      check.n = n;
      check.c = c;
      check.count = static_cast<std::uint64_t>(
          std::count_if(values.begin(), values.end(), [&](double v) { return v >= -static_cast<double>(c); }));
      check.bound = std::exp2(static_cast<double>(c));
      check.length_mass = mass;
      check.holds = static_cast<double>(check.count) <= check.bound;
      out.push_back(check);
    }
  }
  return out;
}

CountingCheck counting_bound_check(const SemiMeasure& mu, unsigned c, std::size_t n, std::uint64_t cap) {
  CountingCheck check;
  check.n = n;
  check.c = c;
  check.bound = std::exp2(static_cast<double>(c));
  for_each_word(mu.alphabet_size(), n, cap, [&](const SymbolString& s) {
    const double v = mu.log2_value(s);
    check.length_mass += std::exp2(v);
    if (v >= -static_cast<double>(c)) ++check.count;
  });
  check.holds = static_cast<double>(check.count) <= check.bound;
  return check;
}

}  // namespace brudno
