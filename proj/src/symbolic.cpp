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

#include "brudno/symbolic.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/Dense>
#include <fmt/core.h>

#include "brudno/error.hpp"
#include "brudno/kernels.hpp"

namespace brudno {
namespace {

constexpr double kRowSumTolerance = 1e-12;
constexpr std::int64_t kMaxDenominator = std::int64_t{1} << 62;

std::int64_t parse_int(std::string_view text) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw Error(ErrorKind::InvalidInput, fmt::format("'{}' is not an integer", text));
  return v;
}

Rational reduced(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw Error(ErrorKind::InvalidInput, "rational needs a positive denominator");
  if (num < 0) throw Error(ErrorKind::InvalidInput, "rational must be non-negative");
  const std::int64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

void check_distribution(const std::vector<double>& p, const char* what) {
  if (p.size() < 2) throw Error(ErrorKind::InvalidInput, fmt::format("{} needs at least two symbols", what));
  double total = 0.0;
  for (double v : p) {
    if (!(v >= 0.0)) throw Error(ErrorKind::InvalidInput, fmt::format("{} has a negative probability", what));
    total += v;
  }
  if (std::abs(total - 1.0) > kRowSumTolerance)
    throw Error(ErrorKind::InvalidInput, fmt::format("{} sums to {:.17g}, not 1", what, total));
}

// Boolean reachability closure of the transition graph.
Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> reachability(const Eigen::MatrixXd& p) {
  const Eigen::Index k = p.rows();
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> r = (p.array() > 0.0).matrix();
  for (Eigen::Index m = 0; m < k; ++m)
    for (Eigen::Index i = 0; i < k; ++i)
      if (r(i, m))
        for (Eigen::Index j = 0; j < k; ++j) r(i, j) = r(i, j) || r(m, j);
  return r;
}

// Primitive <=> some power is entrywise positive; Wielandt bound (k-1)^2+1.
bool primitive(const Eigen::MatrixXd& p) {
  const Eigen::Index k = p.rows();
  Eigen::MatrixXd support = (p.array() > 0.0).cast<double>().matrix();
  Eigen::MatrixXd power = support;
  const Eigen::Index bound = (k - 1) * (k - 1) + 1;
  for (Eigen::Index m = 1; m <= bound; ++m) {
    if ((power.array() > 0.0).all()) return true;
    power = ((power * support).array() > 0.0).cast<double>().matrix();
  }
  return false;
}

Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& p, bool irreducible) {
  const Eigen::Index k = p.rows();
  Eigen::VectorXd pi;
  if (irreducible) {
    Eigen::MatrixXd a = p.transpose() - Eigen::MatrixXd::Identity(k, k);
    a.row(k - 1).setOnes();
    Eigen::VectorXd b = Eigen::VectorXd::Zero(k);
    b(k - 1) = 1.0;
    pi = a.fullPivLu().solve(b);
  } else {
    // Cesaro average of the uniform start; converges for any finite chain.
    Eigen::RowVectorXd v = Eigen::RowVectorXd::Constant(k, 1.0 / static_cast<double>(k));
    Eigen::RowVectorXd avg = Eigen::RowVectorXd::Zero(k);
    constexpr int steps = 1 << 16;
    for (int t = 0; t < steps; ++t) {
      avg += v;
      v = v * p;
    }
    pi = (avg / steps).transpose();
  }
  pi = pi.cwiseMax(0.0);
  pi /= pi.sum();
  if (((pi.transpose() * p) - pi.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw Error(ErrorKind::InvalidInput, "could not find a stationary distribution");
  return pi;
}

std::int64_t common_denominator(std::int64_t a, std::int64_t b) {
  const std::int64_t g = std::gcd(a, b);
  const __int128 l = static_cast<__int128>(a / g) * b;
  if (l > kMaxDenominator) throw Error(ErrorKind::ResourceLimit, "orbit denominators exceed 2^62");
  return static_cast<std::int64_t>(l);
}

void check_partition(const IntervalPartition& partition) {
  const auto& c = partition.cuts;
  if (c.size() < 3) throw Error(ErrorKind::InvalidInput, "partition needs at least two cells");
  if (!(c.front() == Rational{0, 1}) || !(c.back() == Rational{1, 1}))
    throw Error(ErrorKind::InvalidInput, "partition cuts must start at 0 and end at 1");
  for (std::size_t j = 1; j < c.size(); ++j) {
    const __int128 lhs = static_cast<__int128>(c[j - 1].num) * c[j].den;
    const __int128 rhs = static_cast<__int128>(c[j].num) * c[j - 1].den;
    if (!(lhs < rhs)) throw Error(ErrorKind::InvalidInput, "partition cuts must be strictly increasing");
  }
  if (c.size() - 1 > 10) throw Error(ErrorKind::InvalidInput, "partitions are limited to 10 cells");
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos)
    return reduced(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view whole = text.substr(0, dot);
    const std::string_view frac = text.substr(dot + 1);
    if (frac.size() > 18) throw Error(ErrorKind::InvalidInput, "decimal has more than 18 fractional digits");
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const std::int64_t w = whole.empty() ? 0 : parse_int(whole);
    const std::int64_t f = frac.empty() ? 0 : parse_int(frac);
    if (w < 0 || f < 0) throw Error(ErrorKind::InvalidInput, "rational must be non-negative");
    const __int128 num = static_cast<__int128>(w) * den + f;
    if (num > std::numeric_limits<std::int64_t>::max()) throw Error(ErrorKind::InvalidInput, "decimal too large");
    return reduced(static_cast<std::int64_t>(num), den);
  }
  return reduced(parse_int(text), 1);
}

std::string Rational::to_string() const { return den == 1 ? fmt::format("{}", num) : fmt::format("{}/{}", num, den); }

SymbolicSource SymbolicSource::bernoulli(std::vector<double> probabilities) {
  check_distribution(probabilities, "Bernoulli source");
  const bool positive = std::all_of(probabilities.begin(), probabilities.end(), [](double v) { return v > 0.0; });
  const auto k = static_cast<unsigned>(probabilities.size());
  return SymbolicSource(BernoulliSource{std::move(probabilities)}, k, positive);
}

SymbolicSource SymbolicSource::bernoulli_binary(double p_one) { return bernoulli({1.0 - p_one, p_one}); }

SymbolicSource SymbolicSource::markov(const Eigen::MatrixXd& transition) {
  if (transition.rows() != transition.cols() || transition.rows() < 2)
    throw Error(ErrorKind::InvalidInput, "Markov transition matrix must be square with at least two states");
  for (Eigen::Index i = 0; i < transition.rows(); ++i) {
    std::vector<double> row(transition.cols());
    for (Eigen::Index j = 0; j < transition.cols(); ++j) row[j] = transition(i, j);
    check_distribution(row, "Markov transition row");
  }
  const bool irreducible = reachability(transition).all();
  const bool ergodic = irreducible && primitive(transition);
  MarkovSource m{transition, stationary_distribution(transition, irreducible)};
  return SymbolicSource(std::move(m), static_cast<unsigned>(transition.rows()), ergodic);
}

SymbolicSource SymbolicSource::orbit(OrbitMap map, Rational alpha, IntervalPartition partition, Rational x0,
                                     std::size_t orbit_length) {
  check_partition(partition);
  if (x0.num >= x0.den) throw Error(ErrorKind::InvalidInput, "initial point must lie in [0, 1)");
  if (map == OrbitMap::Rotation && alpha.num >= alpha.den)
    throw Error(ErrorKind::InvalidInput, "rotation angle must lie in [0, 1)");
  if (orbit_length == 0) throw Error(ErrorKind::InvalidInput, "orbit length must be positive");
  const unsigned k = partition.cells();
  return SymbolicSource(OrbitSource{map, alpha, std::move(partition), x0, orbit_length}, k, false);
}

std::string SymbolicSource::describe() const {
  return std::visit(
      [](const auto& m) -> std::string {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, BernoulliSource>) {
          std::string s = "bernoulli(";
          for (std::size_t i = 0; i < m.probabilities.size(); ++i)
            s += fmt::format("{}{:g}", i ? "," : "", m.probabilities[i]);
          return s + ")";
        } else if constexpr (std::is_same_v<T, MarkovSource>) {
          std::string s = "markov(";
          for (Eigen::Index i = 0; i < m.transition.rows(); ++i) {
            s += i ? ";" : "";
            for (Eigen::Index j = 0; j < m.transition.cols(); ++j) s += fmt::format("{}{:g}", j ? "," : "", m.transition(i, j));
          }
          return s + ")";
        } else {
          return fmt::format("orbit({}, x0={})", m.map == OrbitMap::Doubling ? "doubling" : "rotation",
                             m.x0.to_string());
        }
      },
      model_);
}

double BlockDistribution::probability(const SymbolString& word) const {
  if (word.size() != n || word.alphabet_size() != alphabet_size)
    throw Error(ErrorKind::InvalidInput, "word does not match the block distribution");
  return probabilities[word_code(word)];
}

BlockDistribution block_distribution(const SymbolicSource& source, std::size_t n, std::uint64_t cap) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "block length must be at least 1");
  const unsigned k = source.alphabet_size();
  const std::uint64_t count = word_count(k, n, cap);
  BlockDistribution out{k, n, {}, false};

  if (const auto* orbit = std::get_if<OrbitSource>(&source.model())) {
    const std::size_t length = std::max(orbit->orbit_length, n);
    const SymbolString path = encode_orbit(orbit->map, orbit->alpha, orbit->partition, orbit->x0, length);
    out.probabilities.assign(count, 0.0);
    const std::size_t windows = length - n + 1;
    std::uint64_t code = 0;
    const std::uint64_t top = count / k;
    for (std::size_t i = 0; i < length; ++i) {
      code = (code % top) * k + path[i];
      if (i + 1 >= n) out.probabilities[code] += 1.0;
    }
    for (double& p : out.probabilities) p /= static_cast<double>(windows);
    out.empirical = true;
    return out;
  }

  std::vector<double> level;
  std::vector<double> next;
  if (const auto* b = std::get_if<BernoulliSource>(&source.model())) {
    level = b->probabilities;
    for (std::size_t m = 1; m < n; ++m) {
      next.assign(level.size() * k, 0.0);
      for (std::size_t w = 0; w < level.size(); ++w)
        for (unsigned a = 0; a < k; ++a) next[w * k + a] = level[w] * b->probabilities[a];
      level.swap(next);
    }
  } else {
    const auto& m = std::get<MarkovSource>(source.model());
    level.assign(m.stationary.data(), m.stationary.data() + k);
    for (std::size_t len = 1; len < n; ++len) {
      next.assign(level.size() * k, 0.0);
      for (std::size_t w = 0; w < level.size(); ++w) {
        const auto last = static_cast<Eigen::Index>(w % k);
        for (unsigned a = 0; a < k; ++a) next[w * k + a] = level[w] * m.transition(last, a);
      }
      level.swap(next);
    }
  }
  out.probabilities = std::move(level);
  return out;
}

double shannon_entropy(const BlockDistribution& d) { return kernels::active().entropy_bits(d.probabilities); }

double binary_entropy(double p) {
  const std::array<double, 2> q = {p, 1.0 - p};
  return kernels::active().entropy_bits(q);
}

std::optional<double> closed_form_rate(const SymbolicSource& source) {
  if (const auto* b = std::get_if<BernoulliSource>(&source.model()))
    return kernels::active().entropy_bits(b->probabilities);
  if (const auto* m = std::get_if<MarkovSource>(&source.model())) {
    double rate = 0.0;
    for (Eigen::Index i = 0; i < m->transition.rows(); ++i) {
      Eigen::VectorXd row = m->transition.row(i).transpose();
      rate += m->stationary(i) * kernels::active().entropy_bits({row.data(), static_cast<std::size_t>(row.size())});
    }
    return rate;
  }
  return std::nullopt;
}

EntropyReport ks_entropy_rate(const SymbolicSource& source, std::size_t n_max, std::uint64_t cap) {
  if (n_max < 1) throw Error(ErrorKind::InvalidInput, "n_max must be at least 1");
  word_count(source.alphabet_size(), n_max, cap);
  EntropyReport report;
  report.rate_estimate = std::numeric_limits<double>::infinity();
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double h = shannon_entropy(block_distribution(source, n, cap));
    report.per_n.push_back({n, h, h / static_cast<double>(n)});
    report.rate_estimate = std::min(report.rate_estimate, h / static_cast<double>(n));
  }
  report.closed_form = closed_form_rate(source);
  return report;
}

double log2_word_probability(const SymbolicSource& source, const SymbolString& word) {
  if (word.alphabet_size() != source.alphabet_size())
    throw Error(ErrorKind::InvalidInput, "word alphabet does not match the source");
  double acc = 0.0;
  if (const auto* b = std::get_if<BernoulliSource>(&source.model())) {
    for (Symbol s : word.symbols()) acc += std::log2(b->probabilities[s]);
    return acc;
  }
  if (const auto* m = std::get_if<MarkovSource>(&source.model())) {
    if (word.empty()) return 0.0;
    acc = std::log2(m->stationary(word[0]));
    for (std::size_t i = 1; i < word.size(); ++i) acc += std::log2(m->transition(word[i - 1], word[i]));
    return acc;
  }
  throw Error(ErrorKind::InvalidInput, "orbit encoders have no exact word probabilities");
}

SymbolString sample_path(const SymbolicSource& source, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  auto draw = [&](auto&& prob, unsigned k) -> Symbol {
    const double u = uniform(gen);
    double cumulative = 0.0;
    unsigned last_positive = 0;
    for (unsigned a = 0; a < k; ++a) {
      const double p = prob(a);
      if (p <= 0.0) continue;
      last_positive = a;
      cumulative += p;
      if (u < cumulative) return static_cast<Symbol>(a);
    }
    return static_cast<Symbol>(last_positive);
  };

  const unsigned k = source.alphabet_size();
  std::vector<Symbol> out;
  out.reserve(n);
  if (const auto* b = std::get_if<BernoulliSource>(&source.model())) {
    for (std::size_t i = 0; i < n; ++i) out.push_back(draw([&](unsigned a) { return b->probabilities[a]; }, k));
  } else if (const auto* m = std::get_if<MarkovSource>(&source.model())) {
    if (n > 0) out.push_back(draw([&](unsigned a) { return m->stationary(a); }, k));
    for (std::size_t i = 1; i < n; ++i) {
      const Symbol prev = out.back();
      out.push_back(draw([&](unsigned a) { return m->transition(prev, a); }, k));
    }
  } else {
    throw Error(ErrorKind::InvalidInput, "sample_path needs a stochastic source");
  }
  return SymbolString(std::move(out), k);
}

SymbolString encode_orbit(OrbitMap map, const Rational& alpha, const IntervalPartition& partition,
                          const Rational& x0, std::size_t n) {
  check_partition(partition);
  if (x0.num >= x0.den) throw Error(ErrorKind::InvalidInput, "initial point must lie in [0, 1)");
  if (map == OrbitMap::Rotation && alpha.num >= alpha.den)
    throw Error(ErrorKind::InvalidInput, "rotation angle must lie in [0, 1)");

  // Work with numerators over one common denominator.
  const std::int64_t den = map == OrbitMap::Rotation ? common_denominator(x0.den, alpha.den) : x0.den;
  std::int64_t x = x0.num * (den / x0.den);
  const std::int64_t step = map == OrbitMap::Rotation ? alpha.num * (den / alpha.den) : 0;

  const auto& cuts = partition.cuts;
  auto cell_of = [&](std::int64_t num) {
    unsigned cell = 0;
    for (unsigned j = 1; j + 1 < cuts.size(); ++j) {
      if (static_cast<__int128>(cuts[j].num) * den <= static_cast<__int128>(num) * cuts[j].den)
        cell = j;
      else
        break;
    }
    return static_cast<Symbol>(cell);
  };

  std::vector<Symbol> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(cell_of(x));
    if (map == OrbitMap::Doubling) {
      x = 2 * x;
      if (x >= den) x -= den;
    } else {
      x += step;
      if (x >= den) x -= den;
    }
  }
  return SymbolString(std::move(out), partition.cells());
}

}  // namespace brudno
