// Copyright 2026 The dyadiclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DYADICLAB_EXPERIMENT_HPP_
#define DYADICLAB_EXPERIMENT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dyadiclab/core.hpp"
#include "dyadiclab/dyadic_interval.hpp"
#include "dyadiclab/errors.hpp"
#include "dyadiclab/haar.hpp"
#include "dyadiclab/parallel.hpp"
#include "dyadiclab/random.hpp"
#include "dyadiclab/sparse.hpp"
#include "dyadiclab/step_signal.hpp"
#include "dyadiclab/walsh.hpp"
#include "dyadiclab/weights.hpp"

namespace dyadiclab {

// ---------------------------------------------------------------------------
// Operators under test.

enum class OperatorKind { kCarleson, kMartingale, kMaximal };

inline std::string to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::kCarleson: return "carleson";
    case OperatorKind::kMartingale: return "martingale";
    default: return "maximal";
  }
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct OperatorSpec {
  OperatorKind kind = OperatorKind::kCarleson;
  // Martingale signs: eps_I = +1 for every I when eps_seed == 0, otherwise a
  // fixed pseudo-random sign per interval derived from the seed.
  std::uint64_t eps_seed = 0;
  IntervalMode maximal_mode = IntervalMode::kDyadic;

  static OperatorSpec carleson() { return {}; }
  static OperatorSpec martingale(std::uint64_t eps_seed = 0) {
    return {OperatorKind::kMartingale, eps_seed, IntervalMode::kDyadic};
  }
  static OperatorSpec maximal(IntervalMode mode = IntervalMode::kDyadic) {
    return {OperatorKind::kMaximal, 0, mode};
  }

  double eps(const DyadicInterval& interval) const {
    if (eps_seed == 0) return 1.0;
    const std::uint64_t key = (static_cast<std::uint64_t>(interval.depth()) << 56) ^
                              static_cast<std::uint64_t>(interval.index());
    return (splitmix64(eps_seed ^ splitmix64(key)) & 1) ? -1.0 : 1.0;
  }
};

inline StepSignal apply_operator(const OperatorSpec& op, const StepSignal& f) {
  switch (op.kind) {
    case OperatorKind::kCarleson: return carleson_max(f);
    case OperatorKind::kMartingale:
      return martingale_transform(f, [&](const DyadicInterval& i) { return op.eps(i); });
    default: return maximal(f, 1.0, op.maximal_mode);
  }
}

// ---------------------------------------------------------------------------
// Operator norm lower bounds.

enum class Strategy { kBasis, kExtremal, kRandom, kGreedyLinearize };

inline std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::kBasis: return "basis";
    case Strategy::kExtremal: return "extremal";
    case Strategy::kRandom: return "random";
    default: return "greedy-linearize";
  }
}

inline Strategy parse_strategy(const std::string& s) {
  if (s == "basis") return Strategy::kBasis;
  if (s == "extremal") return Strategy::kExtremal;
  if (s == "random") return Strategy::kRandom;
  if (s == "greedy-linearize" || s == "greedy") return Strategy::kGreedyLinearize;
  throw ConfigError("unknown strategy: " + s);
}

inline const std::vector<Strategy>& all_strategies() {
  static const std::vector<Strategy> all{Strategy::kBasis, Strategy::kExtremal, Strategy::kRandom,
                                         Strategy::kGreedyLinearize};
  return all;
}

struct EstimateOptions {
  int random_count = 8;
  std::uint64_t seed = 1;
  int greedy_rounds = 10;
  // Test families enumerate every dyadic interval when the operator is cheap
  // or J is at most this; otherwise depths <= coarse_depth plus the chains of
  // intervals touching 0 and 1.
  int full_family_resolution = 8;
  int coarse_depth = 4;
  const StepSignal* warm_start = nullptr;
};

struct NormEstimate {
  double value = 0.0;
  std::optional<StepSignal> argmax;
};

namespace detail {

inline bool full_family(const OperatorSpec& op, int J, const EstimateOptions& opt) {
  return op.kind != OperatorKind::kCarleson || J <= opt.full_family_resolution;
}

inline double ratio_of(const StepSignal& f, const StepSignal& image, double p, const StepSignal& w) {
  const double den = lp_norm(f, p, w);
  if (!(den > 0.0)) return 0.0;
  return lp_norm(image, p, w) / den;
}

inline void consider(NormEstimate& best, double value, const StepSignal& f) {
  if (!best.argmax || value > best.value) {
    best.value = value;
    best.argmax = f;
  }
}

}  // namespace detail

/// Dyadic intervals used by the basis and extremal families.
inline std::vector<DyadicInterval> test_intervals(int J, bool full, int coarse_depth = 4) {
  std::vector<DyadicInterval> out;
  const int dense = full ? J : std::min(J, coarse_depth);
  for (int d = 0; d <= dense; ++d) {
    for (std::int64_t k = 0; k < (std::int64_t{1} << d); ++k) out.emplace_back(d, k);
  }
  for (int d = dense + 1; d <= J; ++d) {
    out.emplace_back(d, 0);
    out.emplace_back(d, (std::int64_t{1} << d) - 1);
  }
  return out;
}

/// Haar functions, indicators and Walsh characters at resolution J.
inline std::vector<StepSignal> basis_family(const OperatorSpec& op, int J, const EstimateOptions& opt = {}) {
  std::vector<StepSignal> out;
  for (const auto& q : test_intervals(J, detail::full_family(op, J, opt), opt.coarse_depth)) {
    out.push_back(StepSignal::indicator(J, q));
    if (q.depth() < J) {
      const auto left = StepSignal::indicator(J, q.left_child());
      const auto right = StepSignal::indicator(J, q.right_child());
      out.push_back((left - right).scaled(1.0 / std::sqrt(q.length())));
    }
  }
  const std::uint64_t n = std::uint64_t{1} << J;
  const std::uint64_t low = std::min<std::uint64_t>(n, 32);
  for (std::uint64_t k = 0; k < low; ++k) out.push_back(walsh_character(k, J));
  for (std::uint64_t k = std::max(low, n - std::min<std::uint64_t>(n, 8)); k < n; ++k) {
    out.push_back(walsh_character(k, J));
  }
  return out;
}

/// sigma chi_I with sigma = w^{-1/(p-1)}.
inline std::vector<StepSignal> extremal_family(const OperatorSpec& op, double p, const StepSignal& w,
                                               const EstimateOptions& opt = {}) {
  const int J = w.resolution();
  const auto sigma = derived_weight(w, p);
  std::vector<StepSignal> out;
  for (const auto& q : test_intervals(J, detail::full_family(op, J, opt), opt.coarse_depth)) {
    out.push_back(sigma * StepSignal::indicator(J, q));
  }
  return out;
}

/// Seeded +-1 signals alternating with Gaussian signals.
inline std::vector<StepSignal> random_family(int J, const EstimateOptions& opt = {}) {
  std::vector<StepSignal> out;
  for (int i = 0; i < opt.random_count; ++i) {
    auto rng = trial_rng(opt.seed, 0x72616e64, static_cast<std::uint64_t>(i));
    out.push_back(i % 2 == 0 ? rademacher_signal(J, rng) : gaussian_signal(J, rng));
  }
  return out;
}

struct ImagePair {
  StepSignal f;
  StepSignal image;
};

inline std::vector<ImagePair> images_of(const OperatorSpec& op, std::vector<StepSignal> family,
                                        unsigned threads = 1) {
  std::vector<ImagePair> out(family.size());
  parallel_for(
      family.size(), [&](std::size_t i) { out[i] = {family[i], apply_operator(op, family[i])}; }, threads);
  return out;
}

inline NormEstimate best_ratio(const std::vector<ImagePair>& pairs, double p, const StepSignal& w) {
  NormEstimate best;
  for (const auto& pr : pairs) detail::consider(best, detail::ratio_of(pr.f, pr.image, p, w), pr.f);
  return best;
}

namespace detail {

// Linearizations L of the operator at a given input, with adjoints in
// L^2([0,1), dx). Each satisfies |L f| <= op f pointwise at the point of
// linearization, so power iteration only proposes new candidates; every
// candidate is scored with the true operator.
class Linearization {
 public:
  Linearization(const OperatorSpec& op, const StepSignal& at) : op_(op), J_(at.resolution()) {
    const std::size_t n = at.size();
    if (op.kind == OperatorKind::kCarleson) {
      const auto spectrum = fwht(at);
      rev_ = reversal_table(J_);
      std::vector<double> running(n, 0.0), best(n, -1.0);
      choice_.assign(n, 0);
      for (std::size_t k = 0; k < n; ++k) {
        const double c = spectrum.coefficients[k];
        for (std::size_t x = 0; x < n; ++x) {
          running[x] += (std::popcount(k & rev_[x]) & 1) ? -c : c;
          const double a = std::abs(running[x]);
          if (a > best[x]) {
            best[x] = a;
            choice_[x] = k;
          }
        }
      }
    } else if (op.kind == OperatorKind::kMaximal) {
      const auto avg = dyadic_averages(at.abs().values(), J_);
      choice_.assign(n, 0);
      for (std::size_t x = 0; x < n; ++x) {
        double best = -1.0;
        for (int d = 0; d <= J_; ++d) {
          const double a = avg[static_cast<std::size_t>(d)][x >> (J_ - d)];
          if (a > best) {
            best = a;
            choice_[x] = static_cast<std::size_t>(d);
          }
        }
      }
    }
  }

  StepSignal apply(const StepSignal& f) const {
    const std::size_t n = f.size();
    std::vector<double> out(n, 0.0);
    if (op_.kind == OperatorKind::kCarleson) {
      const auto spectrum = fwht(f);
      std::vector<double> running(n, 0.0);
      for (std::size_t k = 0; k < n; ++k) {
        const double c = spectrum.coefficients[k];
        for (std::size_t x = 0; x < n; ++x) {
          running[x] += (std::popcount(k & rev_[x]) & 1) ? -c : c;
          if (choice_[x] == k) out[x] = running[x];
        }
      }
      return StepSignal(J_, std::move(out));
    }
    if (op_.kind == OperatorKind::kMaximal) {
      const auto avg = dyadic_averages(f.values(), J_);
      for (std::size_t x = 0; x < n; ++x) {
        const int d = static_cast<int>(choice_[x]);
        out[x] = avg[static_cast<std::size_t>(d)][x >> (J_ - d)];
      }
      return StepSignal(J_, std::move(out));
    }
    return apply_operator(op_, f);
  }

  StepSignal adjoint(const StepSignal& g) const {
    const std::size_t n = g.size();
    if (op_.kind == OperatorKind::kCarleson) {
      const double h = g.cell_measure();
      std::vector<double> coeff(n, 0.0);
      for (std::size_t k = 0; k < n; ++k) {
        double acc = 0.0;
        for (std::size_t x = 0; x < n; ++x) {
          if (choice_[x] >= k) acc += (std::popcount(k & rev_[x]) & 1) ? -g[x] : g[x];
        }
        coeff[k] = acc * h;
      }
      return inverse_fwht(WalshSpectrum{J_, std::move(coeff)});
    }
    if (op_.kind == OperatorKind::kMaximal) {
      std::vector<std::vector<double>> bucket(static_cast<std::size_t>(J_) + 1);
      for (int d = 0; d <= J_; ++d) bucket[static_cast<std::size_t>(d)].assign(std::size_t{1} << d, 0.0);
      for (std::size_t x = 0; x < n; ++x) {
        const int d = static_cast<int>(choice_[x]);
        bucket[static_cast<std::size_t>(d)][x >> (J_ - d)] += g[x];
      }
      std::vector<double> out(n, 0.0);
      for (int d = 0; d <= J_; ++d) {
        const double cells = std::ldexp(1.0, J_ - d);
        for (std::size_t c = 0; c < n; ++c) out[c] += bucket[static_cast<std::size_t>(d)][c >> (J_ - d)] / cells;
      }
      return StepSignal(J_, std::move(out));
    }
    // Haar multipliers with real signs are self-adjoint.
    return apply_operator(op_, g);
  }

 private:
  OperatorSpec op_;
  int J_;
  std::vector<std::uint64_t> rev_;
  std::vector<std::size_t> choice_;
};

inline double signed_power(double x, double e) { return std::copysign(std::pow(std::abs(x), e), x); }

}  // namespace detail

/// Power iteration for max ||L f||_{p,w} / ||f||_{p,w} with L re-linearized
/// at every iterate: f <- Phi_{p'}(L^*(w Phi_p(L f)) / w), Phi_q(x) = |x|^{q-1} sgn x.
inline NormEstimate greedy_linearize(const OperatorSpec& op, double p, const StepSignal& w, StepSignal start,
                                     int rounds) {
  const double q = p / (p - 1.0);
  NormEstimate best;
  StepSignal f = std::move(start);
  if (op.kind == OperatorKind::kMaximal) f = f.abs();
  for (int round = 0; round <= rounds; ++round) {
    const double norm = lp_norm(f, p, w);
    if (!(norm > 0.0) || !std::isfinite(norm)) break;
    f = f.scaled(1.0 / norm);
    detail::consider(best, detail::ratio_of(f, apply_operator(op, f), p, w), f);
    if (round == rounds) break;
    const detail::Linearization lin(op, f);
    const auto u = lin.apply(f);
    std::vector<double> v(u.size());
    for (std::size_t c = 0; c < v.size(); ++c) v[c] = w[c] * detail::signed_power(u[c], p - 1.0);
    const auto z = lin.adjoint(StepSignal(u.resolution(), std::move(v)));
    std::vector<double> next(z.size());
    for (std::size_t c = 0; c < next.size(); ++c) next[c] = detail::signed_power(z[c] / w[c], q - 1.0);
    f = StepSignal(z.resolution(), std::move(next));
  }
  return best;
}

inline std::vector<StepSignal> greedy_starts(const OperatorSpec& op, double p, const StepSignal& w,
                                             const EstimateOptions& opt) {
  const int J = w.resolution();
  const auto sigma = derived_weight(w, p);
  std::vector<StepSignal> starts;
  if (opt.warm_start) starts.push_back(*opt.warm_start);
  starts.push_back(sigma);
  starts.push_back(sigma * StepSignal::indicator(J, DyadicInterval((J + 1) / 2, 0)));
  if (op.kind != OperatorKind::kMaximal) {
    auto rng = trial_rng(opt.seed, 0x67726479, 0);
    starts.push_back(sigma * gaussian_signal(J, rng));
  }
  return starts;
}

inline NormEstimate estimate_operator_norm_detailed(const OperatorSpec& op, double p, const StepSignal& w,
                                                    Strategy strategy, const EstimateOptions& opt = {}) {
  if (!(p > 1.0)) throw DomainError("operator norm estimates need p > 1");
  detail::require_weight(w);
  const int J = w.resolution();
  switch (strategy) {
    case Strategy::kBasis: return best_ratio(images_of(op, basis_family(op, J, opt)), p, w);
    case Strategy::kExtremal: return best_ratio(images_of(op, extremal_family(op, p, w, opt)), p, w);
    case Strategy::kRandom: return best_ratio(images_of(op, random_family(J, opt)), p, w);
    default: {
      NormEstimate best;
      for (auto& s : greedy_starts(op, p, w, opt)) {
        auto e = greedy_linearize(op, p, w, std::move(s), opt.greedy_rounds);
        if (e.argmax) detail::consider(best, e.value, *e.argmax);
      }
      return best;
    }
  }
}

/// max over the strategy's test family of ||op f||_{p,w} / ||f||_{p,w}.
inline double estimate_operator_norm(const OperatorSpec& op, double p, const StepSignal& w,
                                     Strategy strategy, const EstimateOptions& opt = {}) {
  return estimate_operator_norm_detailed(op, p, w, strategy, opt).value;
}

inline double estimate_operator_norm(const OperatorSpec& op, double p, const StepSignal& w,
                                     const std::string& strategy, const EstimateOptions& opt = {}) {
  return estimate_operator_norm(op, p, w, parse_strategy(strategy), opt);
}

// ---------------------------------------------------------------------------
// Configuration.

struct ExperimentConfig {
  std::string name = "scaling";
  std::vector<int> J_list{8, 10, 12};
  std::vector<double> p_list{4.0 / 3.0, 2.0, 4.0};
  std::string weight_family = "power";
  std::vector<double> a_grid{0.0, 0.5, -0.5, 0.8, -0.8, 0.9, -0.9, 0.95, -0.95};
  std::vector<double> r_grid{9.0 / 8.0, 1.5, 2.0};
  int trials = 8;
  int corpus = 200;
  std::uint64_t seed = 20260101;
  std::string output;
  IntervalMode mode = IntervalMode::kDyadic;
  std::vector<Strategy> strategies = all_strategies();
  bool control = true;
  double clip_margin = 0.1;
  int full_family_resolution = 8;
  unsigned threads = 0;

  void validate() const;
};

inline const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"scaling", "sparse-stability", "weak-type"};
  return names;
}

inline ExperimentConfig default_config(const std::string& name) {
  ExperimentConfig c;
  c.name = name;
  if (name == "sparse-stability") {
    c.J_list = {8, 12};
  } else if (name == "weak-type") {
    c.J_list = {8, 12};
    c.p_list = {1.25, 1.5, 2.0};
  } else if (name != "scaling") {
    throw ConfigError("unknown experiment: " + name);
  }
  return c;
}

inline void ExperimentConfig::validate() const {
  if (std::find(experiment_names().begin(), experiment_names().end(), name) == experiment_names().end()) {
    throw ConfigError("unknown experiment: " + name);
  }
  if (J_list.empty()) throw ConfigError("J list is empty");
  for (int J : J_list) {
    if (J < 1 || J > 14) throw ConfigError("J must lie in [1, 14], got " + std::to_string(J));
  }
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (corpus < 1) throw ConfigError("corpus must be >= 1");
  for (double p : p_list) {
    if (!(p > 1.0) || !std::isfinite(p)) throw ConfigError("p must be finite and > 1");
  }
  for (double a : a_grid) {
    if (!(a > -1.0) || !std::isfinite(a)) throw ConfigError("power weight parameter must be > -1");
  }
  for (double r : r_grid) {
    if (!(r > 1.0 && r <= 2.0)) throw ConfigError("r must lie in (1, 2]");
  }
  if (weight_family != "power") throw ConfigError("unknown weight family: " + weight_family);
  if (!(clip_margin >= 0.0 && clip_margin < 1.0)) throw ConfigError("clip_margin must lie in [0, 1)");
  if (strategies.empty()) throw ConfigError("no strategies selected");
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline double parse_number(const std::string& s) {
  const auto slash = s.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const double v = std::stod(s, &used);
      if (used != s.size()) throw ConfigError("");
      return v;
    }
    const std::string num = trim(s.substr(0, slash)), den = trim(s.substr(slash + 1));
    std::size_t u1 = 0, u2 = 0;
    const double a = std::stod(num, &u1), b = std::stod(den, &u2);
    if (u1 != num.size() || u2 != den.size() || b == 0.0) throw ConfigError("");
    return a / b;
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + s + "'");
  }
}

inline long long parse_integer(const std::string& s) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw ConfigError("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("not an integer: '" + s + "'");
  }
}

inline bool parse_bool(const std::string& s) {
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError("not a boolean: '" + s + "'");
}

template <class T, class Fn>
std::vector<T> parse_list(const std::string& s, Fn&& fn) {
  std::vector<T> out;
  for (const auto& item : split_list(s)) out.push_back(static_cast<T>(fn(item)));
  return out;
}

}  // namespace detail

/// Line-oriented `key = value` format; `#` starts a comment. Lists are comma
/// separated and numbers may be written as fractions such as 4/3.
inline ExperimentConfig parse_config(std::istream& in, ExperimentConfig config = {}) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    try {
      if (key == "name" || key == "experiment") {
        config.name = value;
      } else if (key == "J") {
        config.J_list = detail::parse_list<int>(value, detail::parse_integer);
      } else if (key == "p") {
        config.p_list = detail::parse_list<double>(value, detail::parse_number);
      } else if (key == "weight") {
        config.weight_family = value;
      } else if (key == "a") {
        config.a_grid = detail::parse_list<double>(value, detail::parse_number);
      } else if (key == "r") {
        config.r_grid = detail::parse_list<double>(value, detail::parse_number);
      } else if (key == "trials") {
        config.trials = static_cast<int>(detail::parse_integer(value));
      } else if (key == "corpus") {
        config.corpus = static_cast<int>(detail::parse_integer(value));
      } else if (key == "seed") {
        config.seed = static_cast<std::uint64_t>(detail::parse_integer(value));
      } else if (key == "output") {
        config.output = value;
      } else if (key == "mode") {
        config.mode = parse_interval_mode(value);
      } else if (key == "strategies") {
        config.strategies = detail::parse_list<Strategy>(value, parse_strategy);
      } else if (key == "control") {
        config.control = detail::parse_bool(value);
      } else if (key == "clip_margin") {
        config.clip_margin = detail::parse_number(value);
      } else if (key == "full_family_resolution") {
        config.full_family_resolution = static_cast<int>(detail::parse_integer(value));
      } else if (key == "threads") {
        config.threads = static_cast<unsigned>(detail::parse_integer(value));
      } else {
        throw ConfigError("unknown key '" + key + "'");
      }
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    } catch (const DomainError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  config.validate();
  return config;
}

inline ExperimentConfig read_config_file(const std::string& path, ExperimentConfig base = {}) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  try {
    return parse_config(in, std::move(base));
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Records.

struct ExperimentRecord {
  std::string experiment;
  int J = 0;
  double p = 0.0;
  double a = 0.0;
  double ap = 0.0;
  double a1 = 0.0;  // -1 when the continuous weight is not in A_1
  double ainfty = 0.0;
  double norm_lb = 0.0;
  double bound_rhs = 0.0;
  double ratio = 0.0;
  double exponent = 0.0;
};

inline const char* kCsvHeader = "experiment,J,p,a,ap,a1,ainfty,norm_lb,bound_rhs,ratio,exponent";

inline void sort_records(std::vector<ExperimentRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const auto& x, const auto& y) {
    return std::tie(x.experiment, x.J, x.p, x.a) < std::tie(y.experiment, y.J, y.p, y.a);
  });
}

inline std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.experiment << ',' << r.J << ',' << format_double(r.p) << ',' << format_double(r.a) << ','
        << format_double(r.ap) << ',' << format_double(r.a1) << ',' << format_double(r.ainfty) << ','
        << format_double(r.norm_lb) << ',' << format_double(r.bound_rhs) << ',' << format_double(r.ratio)
        << ',' << format_double(r.exponent) << '\n';
  }
}

inline void write_csv_file(const std::string& path, const std::vector<ExperimentRecord>& records) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open output file: " + path);
  write_csv(out, records);
  if (!out) throw IoError("write failed: " + path);
}

// ---------------------------------------------------------------------------
// Scaling study.

/// max(p', 2/(p-1)).
inline double carleson_exponent(double p) { return std::max(p / (p - 1.0), 2.0 / (p - 1.0)); }

/// Grid points kept at exponent p: all of (-1, 1) at p = 2, otherwise
/// [-(1 - margin), (p - 1)(1 - margin)].
inline std::vector<double> weight_grid(const ExperimentConfig& config, double p) {
  std::vector<double> out;
  for (double a : config.a_grid) {
    const bool keep = p == 2.0 ? (a > -1.0 && a < 1.0)
                               : (a >= -(1.0 - config.clip_margin) && a <= (p - 1.0) * (1.0 - config.clip_margin));
    if (keep) out.push_back(a);
  }
  return out;
}

namespace detail {

constexpr std::uint64_t kControlEpsStream = 0x6d617274;

inline ExperimentRecord scaling_point(const std::string& experiment, const OperatorSpec& op, int J, double p,
                                      double a, double exponent, const std::vector<ImagePair>& basis_images,
                                      const ExperimentConfig& config) {
  const auto profile = power_weight(a, J);
  const auto& w = profile.weight();
  EstimateOptions opt;
  opt.random_count = config.trials;
  opt.seed = config.seed;
  opt.full_family_resolution = config.full_family_resolution;
  NormEstimate best;
  const auto merge = [&](const NormEstimate& e) {
    if (e.argmax) consider(best, e.value, *e.argmax);
  };
  bool greedy = false;
  for (Strategy s : config.strategies) {
    if (s == Strategy::kGreedyLinearize) {
      greedy = true;
    } else if (s == Strategy::kBasis) {
      merge(best_ratio(basis_images, p, w));
    } else {
      merge(estimate_operator_norm_detailed(op, p, w, s, opt));
    }
  }
  if (greedy) {
    std::optional<StepSignal> warm = best.argmax;
    opt.warm_start = warm ? &*warm : nullptr;
    merge(estimate_operator_norm_detailed(op, p, w, Strategy::kGreedyLinearize, opt));
  }
  ExperimentRecord r;
  r.experiment = experiment;
  r.J = J;
  r.p = p;
  r.a = a;
  r.ap = profile.ap(p, config.mode);
  r.a1 = a <= 0.0 ? profile.a1(config.mode) : -1.0;
  r.ainfty = profile.ainfty();
  r.norm_lb = best.value;
  r.exponent = exponent;
  r.bound_rhs = std::pow(r.ap, exponent);
  r.ratio = r.norm_lb / r.bound_rhs;
  return r;
}

}  // namespace detail

inline OperatorSpec control_operator(std::uint64_t seed) {
  return OperatorSpec::martingale(splitmix64(seed ^ detail::kControlEpsStream) | 1);
}

/// Walsh-Carleson study over (J, p, a) against [w]_{A_p}^{max(p', 2/(p-1))},
/// plus the martingale transform control at p = 2 against [w]_{A_2}.
inline std::vector<ExperimentRecord> run_scaling_experiment(const ExperimentConfig& config) {
  config.validate();
  struct Task {
    std::string experiment;
    OperatorSpec op;
    int J;
    double p;
    double a;
    double exponent;
    const std::vector<ImagePair>* basis;
  };
  const bool want_basis =
      std::find(config.strategies.begin(), config.strategies.end(), Strategy::kBasis) != config.strategies.end();
  const auto carleson = OperatorSpec::carleson();
  const auto control = control_operator(config.seed);
  EstimateOptions opt;
  opt.full_family_resolution = config.full_family_resolution;
  std::map<int, std::vector<ImagePair>> carleson_basis, control_basis;
  for (int J : config.J_list) {
    if (!want_basis) {
      carleson_basis[J];
      control_basis[J];
      continue;
    }
    carleson_basis[J] = images_of(carleson, basis_family(carleson, J, opt), config.threads);
    if (config.control) control_basis[J] = images_of(control, basis_family(control, J, opt), config.threads);
  }
  std::vector<Task> tasks;
  for (int J : config.J_list) {
    for (double p : config.p_list) {
      for (double a : weight_grid(config, p)) {
        tasks.push_back({"carleson-power", carleson, J, p, a, carleson_exponent(p), &carleson_basis[J]});
      }
    }
    if (config.control) {
      for (double a : weight_grid(config, 2.0)) {
        tasks.push_back({"martingale-a2", control, J, 2.0, a, 1.0, &control_basis[J]});
      }
    }
  }
  std::vector<ExperimentRecord> records(tasks.size());
  parallel_for(
      tasks.size(),
      [&](std::size_t i) {
        const auto& t = tasks[i];
        records[i] = detail::scaling_point(t.experiment, t.op, t.J, t.p, t.a, t.exponent, *t.basis, config);
      },
      config.threads);
  sort_records(records);
  return records;
}

// ---------------------------------------------------------------------------
// Probes over a seeded signal corpus.

struct ProbeResult {
  double value = 0.0;
  std::uint64_t witness_trial = 0;
};

namespace detail {

constexpr std::uint64_t kSparseProbeStream = 0x73707273;
constexpr std::uint64_t kWeakProbeStream = 0x7765616b;

inline std::optional<StepSignal> corpus_signal(int J, std::uint64_t seed, std::uint64_t stream, std::uint64_t t) {
  auto rng = trial_rng(seed, stream, t);
  auto f = random_signal(J, rng);
  if (f.sup_abs() == 0.0) return std::nullopt;
  return f;
}

template <class Eval>
std::vector<ProbeResult> run_probe(int J, std::size_t outputs, int corpus, std::uint64_t seed,
                                   std::uint64_t stream, unsigned threads, Eval&& eval) {
  std::vector<std::vector<double>> per_trial(static_cast<std::size_t>(corpus));
  parallel_for(
      per_trial.size(),
      [&](std::size_t t) {
        if (auto f = corpus_signal(J, seed, stream, t)) per_trial[t] = eval(*f);
      },
      threads);
  std::vector<ProbeResult> out(outputs);
  for (std::size_t t = 0; t < per_trial.size(); ++t) {
    for (std::size_t i = 0; i < per_trial[t].size(); ++i) {
      if (per_trial[t][i] > out[i].value) out[i] = {per_trial[t][i], t};
    }
  }
  return out;
}

}  // namespace detail

/// R(J) for each r: max over the corpus of sup_x Wf(x) / (r' A_{r,S} f(x) +
/// r' <|f|^r>^{1/r}), S = build_sparse(Wf, [0,1), 1/8), averages of f.
inline std::vector<ProbeResult> carleson_sparse_ratios(int J, const std::vector<double>& rs, int corpus,
                                                       std::uint64_t seed, unsigned threads = 0) {
  for (double r : rs) {
    if (!(r > 1.0 && r <= 2.0)) throw DomainError("r must lie in (1, 2]");
  }
  return detail::run_probe(J, rs.size(), corpus, seed, detail::kSparseProbeStream, threads,
                           [&](const StepSignal& f) {
                             const auto wf = carleson_max(f);
                             const auto family = build_sparse(wf, DyadicInterval::unit(), 0.125);
                             std::vector<double> out;
                             for (double r : rs) {
                               const double rp = r / (r - 1.0);
                               const auto ars = apply_Ars(family, f, r);
                               const double root = detail::power_mean(f.values(), r);
                               double worst = 0.0;
                               for (std::size_t c = 0; c < wf.size(); ++c) {
                                 worst = std::max(worst, wf[c] / (rp * ars[c] + rp * root));
                               }
                               out.push_back(worst);
                             }
                             return out;
                           });
}

/// Max over the corpus of weak_norm(Wf, p) / lp_norm(f, p), for each p.
inline std::vector<ProbeResult> weak_type_ratios(int J, const std::vector<double>& ps, int corpus,
                                                 std::uint64_t seed, unsigned threads = 0) {
  return detail::run_probe(J, ps.size(), corpus, seed, detail::kWeakProbeStream, threads,
                           [&](const StepSignal& f) {
                             const auto wf = carleson_max(f);
                             std::vector<double> out;
                             for (double p : ps) out.push_back(weak_norm(wf, p) / lp_norm(f, p));
                             return out;
                           });
}

inline std::vector<ExperimentRecord> run_probe_experiment(const ExperimentConfig& config) {
  config.validate();
  const bool sparse = config.name == "sparse-stability";
  const auto& params = sparse ? config.r_grid : config.p_list;
  std::vector<ExperimentRecord> records;
  for (int J : config.J_list) {
    const auto results = sparse ? carleson_sparse_ratios(J, params, config.corpus, config.seed, config.threads)
                                : weak_type_ratios(J, params, config.corpus, config.seed, config.threads);
    for (std::size_t i = 0; i < params.size(); ++i) {
      ExperimentRecord r;
      r.experiment = config.name;
      r.J = J;
      r.p = params[i];
      r.ap = r.a1 = r.ainfty = 1.0;
      r.norm_lb = results[i].value;
      r.bound_rhs = 1.0;
      r.ratio = results[i].value;
      r.exponent = 1.0;
      records.push_back(r);
    }
  }
  sort_records(records);
  return records;
}

inline std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config) {
  return config.name == "scaling" ? run_scaling_experiment(config) : run_probe_experiment(config);
}

// ---------------------------------------------------------------------------
// Stability gates.

/// Largest ratio among records of `experiment` at resolution J, optionally
/// restricted to one p.
inline double max_ratio(const std::vector<ExperimentRecord>& records, const std::string& experiment, int J,
                        std::optional<double> p = std::nullopt) {
  double best = 0.0;
  bool found = false;
  for (const auto& r : records) {
    if (r.experiment != experiment || r.J != J || (p && r.p != *p)) continue;
    best = std::max(best, r.ratio);
    found = true;
  }
  if (!found) throw ConfigError("no records for " + experiment + " at J=" + std::to_string(J));
  return best;
}

struct StabilityGate {
  std::string experiment;
  std::optional<double> p;
  int low_J = 8;
  int high_J = 12;
  double low = 0.0;
  double high = 0.0;
  double factor = 1.25;
  bool pass() const { return high <= factor * low; }
};

inline StabilityGate stability_gate(const std::vector<ExperimentRecord>& records, const std::string& experiment,
                                    int low_J = 8, int high_J = 12, double factor = 1.25,
                                    std::optional<double> p = std::nullopt) {
  StabilityGate g;
  g.experiment = experiment;
  g.p = p;
  g.low_J = low_J;
  g.high_J = high_J;
  g.factor = factor;
  g.low = max_ratio(records, experiment, low_J, p);
  g.high = max_ratio(records, experiment, high_J, p);
  return g;
}

/// The gates applicable to a finished experiment.
inline std::vector<StabilityGate> experiment_gates(const ExperimentConfig& config,
                                                   const std::vector<ExperimentRecord>& records) {
  std::vector<StabilityGate> gates;
  const auto has = [&](int J) { return std::find(config.J_list.begin(), config.J_list.end(), J) != config.J_list.end(); };
  if (!has(8) || !has(12)) return gates;
  if (config.name == "scaling") {
    gates.push_back(stability_gate(records, "carleson-power"));
    if (config.control) gates.push_back(stability_gate(records, "martingale-a2"));
  } else {
    const auto& params = config.name == "sparse-stability" ? config.r_grid : config.p_list;
    for (double x : params) gates.push_back(stability_gate(records, config.name, 8, 12, 1.25, x));
  }
  return gates;
}

}  // namespace dyadiclab

#endif  // DYADICLAB_EXPERIMENT_HPP_
