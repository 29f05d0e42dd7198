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

#ifndef DYADICLAB_FUZZ_HPP_
#define DYADICLAB_FUZZ_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dyadiclab/core.hpp"
#include "dyadiclab/errors.hpp"
#include "dyadiclab/haar.hpp"
#include "dyadiclab/orlicz.hpp"
#include "dyadiclab/parallel.hpp"
#include "dyadiclab/random.hpp"
#include "dyadiclab/sparse.hpp"
#include "dyadiclab/walsh.hpp"
#include "dyadiclab/weights.hpp"

namespace dyadiclab {

struct FuzzOptions {
  std::uint64_t seed = 1;
  std::uint64_t trials = 100;
  std::optional<int> resolution;  // fixes J instead of drawing it per trial
  unsigned threads = 0;
  std::size_t max_witnesses = 8;
};

struct FuzzReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::uint64_t passed = 0;
  std::uint64_t failed = 0;
  // Smallest (allowed - observed) over all checks; negative means a violation.
  double worst_margin = std::numeric_limits<double>::infinity();
  bool hard_gate_failed = false;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::string> witnesses;

  bool ok() const { return !hard_gate_failed; }
  std::optional<double> metric(const std::string& key) const {
    for (const auto& [k, v] : metrics) {
      if (k == key) return v;
    }
    return std::nullopt;
  }
};

inline const std::vector<std::string>& fuzz_suites() {
  static const std::vector<std::string> suites{"modulus-identity", "bit-algebra", "sparse", "rearrangement",
                                               "orlicz", "weights", "prop42", "prop31i"};
  return suites;
}

namespace detail {

struct TrialOutcome {
  bool pass = true;
  double margin = std::numeric_limits<double>::infinity();
  std::string witness;
  std::vector<double> values;  // suite-specific measurements

  void check(double allowed_minus_observed, const std::string& what) {
    margin = std::min(margin, allowed_minus_observed);
    if (!(allowed_minus_observed >= 0.0)) {
      if (pass) witness = what;
      pass = false;
    }
  }
};

template <class Trial>
std::vector<TrialOutcome> run_trials(const FuzzOptions& opt, std::uint64_t stream, Trial&& trial) {
  std::vector<TrialOutcome> out(opt.trials);
  parallel_for(
      out.size(),
      [&](std::size_t t) {
        auto rng = trial_rng(opt.seed, stream, t);
        out[t] = trial(t, rng);
      },
      opt.threads);
  return out;
}

inline FuzzReport summarize(const std::string& suite, const FuzzOptions& opt,
                            const std::vector<TrialOutcome>& outcomes) {
  FuzzReport r;
  r.suite = suite;
  r.seed = opt.seed;
  r.trials = outcomes.size();
  for (std::size_t t = 0; t < outcomes.size(); ++t) {
    const auto& o = outcomes[t];
    r.worst_margin = std::min(r.worst_margin, o.margin);
    if (o.pass) {
      ++r.passed;
    } else {
      ++r.failed;
      if (r.witnesses.size() < opt.max_witnesses) {
        r.witnesses.push_back("trial " + std::to_string(t) + ": " + o.witness);
      }
    }
  }
  r.hard_gate_failed = r.failed > 0;
  return r;
}

inline int draw_resolution(const FuzzOptions& opt, Rng& rng, int lo, int hi) {
  return opt.resolution ? *opt.resolution : uniform_int(rng, lo, hi);
}

inline std::string describe(const StepSignal& f) {
  std::ostringstream s;
  s.precision(17);
  s << "J=" << f.resolution();
  if (f.resolution() <= 4) {
    s << " f=(";
    for (std::size_t c = 0; c < f.size(); ++c) s << (c ? "," : "") << f[c];
    s << ")";
  }
  return s.str();
}

inline std::string fmt(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

}  // namespace detail

/// |T_n f| = |W_n f| cellwise, for every n < 2^J, to 1e-9 ||f||_inf.
inline FuzzReport fuzz_modulus_identity(const FuzzOptions& opt) {
  auto outcomes = detail::run_trials(opt, 1, [&](std::size_t t, Rng& rng) {
    detail::TrialOutcome o;
    const int J = opt.resolution ? *opt.resolution : 4 + static_cast<int>(t % 7);
    const auto f = random_signal(J, rng);
    const double tol = 1e-9 * f.sup_abs();
    const auto spectrum = fwht(f);
    const auto rev = detail::reversal_table(J);
    std::vector<double> running(f.size(), 0.0);
    double worst = 0.0;
    std::uint64_t worst_n = 0;
    for (std::uint64_t n = 0; n < f.size(); ++n) {
      const double c = spectrum.coefficients[n];
      for (std::size_t x = 0; x < f.size(); ++x) running[x] += (std::popcount(n & rev[x]) & 1) ? -c : c;
      const auto tn = modulated_transform(f, n);
      for (std::size_t x = 0; x < f.size(); ++x) {
        const double dev = std::abs(std::abs(tn[x]) - std::abs(running[x]));
        if (dev > worst) {
          worst = dev;
          worst_n = n;
        }
      }
    }
    o.values = {worst};
    o.check(tol - worst, detail::describe(f) + " n=" + std::to_string(worst_n) + " deviation=" + detail::fmt(worst));
    return o;
  });
  auto r = detail::summarize("modulus-identity", opt, outcomes);
  double worst = 0.0;
  for (const auto& o : outcomes) worst = std::max(worst, o.values.at(0));
  r.metrics.emplace_back("max_deviation", worst);
  return r;
}

/// BitDecomposition invariants for n = 1, ..., trials (exhaustive, seed unused).
inline FuzzReport fuzz_bit_algebra(const FuzzOptions& opt) {
  auto outcomes = detail::run_trials(opt, 2, [&](std::size_t t, Rng&) {
    detail::TrialOutcome o;
    const std::uint64_t n = t + 1;
    const auto d = bit_decomposition(n);
    const std::string tag = "n=" + std::to_string(n);
    std::uint64_t sum = 0;
    for (std::size_t j = 0; j < d.k_list.size(); ++j) {
      sum += std::uint64_t{1} << d.k_list[j];
      if (j > 0 && !(d.k_list[j] < d.k_list[j - 1])) o.check(-1.0, tag + " exponents not decreasing");
    }
    o.check(sum == n ? 0.0 : -1.0, tag + " bits do not sum to n");
    if (d.r_list.size() != d.k_list.size()) o.check(-1.0, tag + " r_list size");
    std::uint64_t prefix = 0;
    for (std::size_t j = 0; j < d.k_list.size() && j < d.r_list.size(); ++j) {
      // r_j 2^{k_j} = sum_{l<j} 2^{k_l} with r_j integral.
      const std::uint64_t scale = std::uint64_t{1} << d.k_list[j];
      if (prefix % scale != 0 || d.r_list[j] * scale != prefix) o.check(-1.0, tag + " r_j not integral");
      prefix += scale;
    }
    const std::size_t expected = d.k_list.empty() ? 0 : d.k_list.size() - 1;
    if (d.freq_intervals.size() != expected) o.check(-1.0, tag + " frequency interval count");
    for (std::size_t j = 0; j < d.freq_intervals.size(); ++j) {
      const auto [b, e] = d.freq_intervals[j];
      const std::uint64_t len = e - b;
      if (!(e > b) || (len & (len - 1)) != 0) {
        o.check(-1.0, tag + " interval not dyadic");
        continue;
      }
      if (b % (2 * len) != 0) o.check(-1.0, tag + " interval not a left child");
      if (!(n >= e && n < e + len)) o.check(-1.0, tag + " right sibling misses n");
      for (std::size_t i = 0; i < j; ++i) {
        const auto [b2, e2] = d.freq_intervals[i];
        if (b < e2 && b2 < e) o.check(-1.0, tag + " intervals overlap");
      }
    }
    const auto mask = martingale_mask(n);
    std::vector<int> depths(d.k_list.begin(), d.k_list.end());
    auto sel = mask.selected_depths;
    std::sort(depths.begin(), depths.end());
    std::sort(sel.begin(), sel.end());
    if (depths != sel) o.check(-1.0, tag + " mask scales differ from set bits");
    o.check(0.0, tag);
    return o;
  });
  return detail::summarize("bit-algebra", opt, outcomes);
}

/// Sparseness >= 1/2 and pointwise domination constant <= 4 (hard gates);
/// the distribution of constants and the fraction within 2 are recorded.
inline FuzzReport fuzz_sparse(const FuzzOptions& opt) {
  constexpr double kLambda = 0.125;
  auto outcomes = detail::run_trials(opt, 3, [&](std::size_t t, Rng& rng) {
    detail::TrialOutcome o;
    const int J = detail::draw_resolution(opt, rng, 1, 10);
    const auto f = t % 4 == 3 ? two_value_signal(J, rng) : random_signal(J, rng);
    const auto family = build_sparse(f, DyadicInterval::unit(), kLambda);
    const double sparseness = verify_sparseness(family);
    const double c = domination_check(f, family, kLambda);
    o.values = {sparseness, c};
    const std::string tag = detail::describe(f);
    o.check(sparseness - 0.5, tag + " sparseness=" + detail::fmt(sparseness));
    o.check(4.0 - c, tag + " domination constant=" + detail::fmt(c));
    return o;
  });
  auto r = detail::summarize("sparse", opt, outcomes);
  double min_sparse = std::numeric_limits<double>::infinity(), max_c = 0.0;
  const std::vector<double> edges{1.0, 1.5, 2.0, 3.0, 4.0};
  std::vector<double> hist(edges.size() + 1, 0.0);
  for (const auto& o : outcomes) {
    min_sparse = std::min(min_sparse, o.values[0]);
    max_c = std::max(max_c, o.values[1]);
    const auto bin = static_cast<std::size_t>(std::lower_bound(edges.begin(), edges.end(), o.values[1]) - edges.begin());
    hist[bin] += 1.0;
  }
  const double n = static_cast<double>(std::max<std::size_t>(outcomes.size(), 1));
  r.metrics.emplace_back("min_sparseness", min_sparse);
  r.metrics.emplace_back("max_domination_constant", max_c);
  r.metrics.emplace_back("fraction_constant_le_2", (hist[0] + hist[1] + hist[2]) / n);
  r.metrics.emplace_back("count_constant_le_1", hist[0]);
  r.metrics.emplace_back("count_constant_1_to_1.5", hist[1]);
  r.metrics.emplace_back("count_constant_1.5_to_2", hist[2]);
  r.metrics.emplace_back("count_constant_2_to_3", hist[3]);
  r.metrics.emplace_back("count_constant_3_to_4", hist[4]);
  r.metrics.emplace_back("count_constant_gt_4", hist[5]);
  return r;
}

inline const std::vector<double>& ladder_lambdas() {
  static const std::vector<double> l{0.25, 0.125, 0.0625, 0.03125, 0.015625, 0.0078125, 0.00390625};
  return l;
}

/// For each lambda in the ladder: f*(t) <= 2 (M^#_lambda f)*(2t) + f*(2t) on
/// t in (0, 1/2], and ||f||_{p,inf} <= 3p ||M^#_lambda f||_{p,inf} for
/// p in {1.5, 2, 3}, with M^# grid-aligned on the zero extension of f to a
/// window of half the signal length on each side. The hard gate requires
/// some lambda to pass every trial.
inline FuzzReport fuzz_rearrangement(const FuzzOptions& opt) {
  const auto& lambdas = ladder_lambdas();
  const std::size_t L = lambdas.size();
  auto outcomes = detail::run_trials(opt, 4, [&](std::size_t, Rng& rng) {
    detail::TrialOutcome o;
    const int J = detail::draw_resolution(opt, rng, 1, 8);
    const auto f = random_signal(J, rng);
    const std::size_t n = f.size();
    const auto lines = sharp_maximal_on_line(f, lambdas, n / 2);
    const auto fr = rearrange(f);
    o.values.assign(2 * L, 0.0);
    for (std::size_t l = 0; l < L; ++l) {
      const auto mr = rearrange(lines[l].values, J);
      double rear = std::numeric_limits<double>::infinity();
      // Both sides are step functions of t with breaks on the half-cell grid.
      for (std::size_t k = 1; k <= n; ++k) {
        const double t = std::ldexp(static_cast<double>(k), -J - 1);
        for (double s : {t, t - std::ldexp(0.5, -J - 1)}) {
          if (!(s > 0.0)) continue;
          rear = std::min(rear, 2.0 * mr.at(2.0 * s) + fr.at(2.0 * s) - fr.at(s));
        }
      }
      double lemma = std::numeric_limits<double>::infinity();
      for (double p : {1.5, 2.0, 3.0}) lemma = std::min(lemma, 3.0 * p * weak_norm(lines[l], p) - weak_norm(f, p));
      const double scale = 1e-9 * std::max(1.0, f.sup_abs());
      o.values[l] = rear + scale;
      o.values[L + l] = lemma + scale;
    }
    return o;
  });
  FuzzReport r;
  r.suite = "rearrangement";
  r.seed = opt.seed;
  r.trials = outcomes.size();
  std::optional<std::size_t> largest;
  for (std::size_t l = 0; l < L; ++l) {
    std::uint64_t rear_pass = 0, lemma_pass = 0, both = 0;
    for (const auto& o : outcomes) {
      rear_pass += o.values[l] >= 0.0;
      lemma_pass += o.values[L + l] >= 0.0;
      both += o.values[l] >= 0.0 && o.values[L + l] >= 0.0;
    }
    const std::string tag = "lambda_" + detail::fmt(lambdas[l]);
    r.metrics.emplace_back(tag + "_rearrangement_pass", static_cast<double>(rear_pass));
    r.metrics.emplace_back(tag + "_weak_bound_pass", static_cast<double>(lemma_pass));
    if (both == outcomes.size() && !largest) largest = l;
  }
  if (largest) {
    r.metrics.emplace_back("largest_lambda", lambdas[*largest]);
    for (std::size_t t = 0; t < outcomes.size(); ++t) {
      const auto& o = outcomes[t];
      r.worst_margin = std::min({r.worst_margin, o.values[*largest], o.values[L + *largest]});
    }
    r.passed = outcomes.size();
  } else {
    r.metrics.emplace_back("largest_lambda", 0.0);
    const std::size_t last = L - 1;
    for (std::size_t t = 0; t < outcomes.size(); ++t) {
      const auto& o = outcomes[t];
      const double m = std::min(o.values[last], o.values[L + last]);
      r.worst_margin = std::min(r.worst_margin, m);
      if (m >= 0.0) {
        ++r.passed;
      } else {
        ++r.failed;
        if (r.witnesses.size() < opt.max_witnesses) {
          r.witnesses.push_back("trial " + std::to_string(t) + ": fails at lambda " + detail::fmt(lambdas[last]));
        }
      }
    }
    r.hard_gate_failed = true;
  }
  return r;
}

inline std::vector<YoungFunction> builtin_young_functions() {
  return {YoungFunction::linear(),  YoungFunction::power(1.5), YoungFunction::power(2.0),
          YoungFunction::llog(),    YoungFunction::konyagin(),  YoungFunction::antonov(1),
          YoungFunction::antonov(2)};
}

/// Luxemburg defining equation to 1e-8, ||f||_{Phi,Q} <= (2 xi (<|f|^p>_Q))^{1/p},
/// and M_Phi f <= (2 xi)^{1/p} M_p f pointwise (dyadic), for p in {1.5, 2, 3}.
inline FuzzReport fuzz_orlicz(const FuzzOptions& opt) {
  const auto phis = builtin_young_functions();
  const std::vector<double> ps{1.5, 2.0, 3.0};
  std::vector<std::vector<double>> xi(phis.size());
  for (std::size_t i = 0; i < phis.size(); ++i) {
    for (double p : ps) xi[i].push_back(xi_phi(phis[i], p));
  }
  auto outcomes = detail::run_trials(opt, 5, [&](std::size_t t, Rng& rng) {
    detail::TrialOutcome o;
    const int J = detail::draw_resolution(opt, rng, 1, 6);
    const auto f = random_signal(J, rng);
    const auto q = random_interval(J, rng);
    const std::size_t i = t % phis.size();
    const std::size_t pi = (t / phis.size()) % ps.size();
    const auto& phi = phis[i];
    const double p = ps[pi];
    const std::string tag = detail::describe(f) + " Q=" + q.to_string() + " phi=" + phi.name() + " p=" + detail::fmt(p);
    const auto cells = f.restrict_to(q);
    const double norm = luxemburg_norm_of(cells, phi);
    double eq_dev = 0.0;
    if (norm > 0.0) {
      const double m = mean_phi(cells, phi, norm);
      o.check(std::min(m - (1.0 - 1e-8), 1.0 - m), tag + " defining average=" + detail::fmt(m));
      eq_dev = 1.0 - m;
    }
    o.values = {eq_dev};
    // A divergent xi makes both bounds vacuous.
    if (!std::isfinite(xi[i][pi])) return o;
    const double bound = std::pow(2.0 * xi[i][pi] * std::pow(detail::power_mean(cells, p), p), 1.0 / p);
    o.check(bound * (1.0 + 1e-9) + 1e-12 - norm, tag + " norm=" + detail::fmt(norm) + " bound=" + detail::fmt(bound));
    const auto mphi = orlicz_maximal(f, phi);
    const auto mp = maximal(f, p);
    const double c = std::pow(2.0 * xi[i][pi], 1.0 / p);
    for (std::size_t x = 0; x < f.size(); ++x) {
      const double rhs = c * mp[x];
      o.check(rhs * (1.0 + 1e-9) + 1e-12 - mphi[x], tag + " pointwise at cell " + std::to_string(x));
    }
    return o;
  });
  auto r = detail::summarize("orlicz", opt, outcomes);
  double worst = 0.0;
  for (const auto& o : outcomes) worst = std::max(worst, o.values.empty() ? 0.0 : o.values[0]);
  r.metrics.emplace_back("max_defining_equation_gap", worst);
  return r;
}

/// [w]_{A_p} >= 1, grid >= dyadic, [w]_{A_1} >= [w]_{A_p}, the duality
/// identity [w]_{A_p} = [sigma]_{A_p'}^{p-1}, and [w]_{A_inf} >= 1; records
/// the largest [w]_{A_inf} / [w]_{A_1}.
inline FuzzReport fuzz_weights(const FuzzOptions& opt) {
  const std::vector<double> ps{4.0 / 3.0, 1.5, 2.0, 3.0, 4.0};
  auto outcomes = detail::run_trials(opt, 6, [&](std::size_t t, Rng& rng) {
    detail::TrialOutcome o;
    const int J = detail::draw_resolution(opt, rng, 1, 8);
    const double p = ps[t % ps.size()];
    const auto w = random_weight(J, rng, -0.9, std::min(0.9, 0.9 * (p - 1.0)));
    const std::string tag = detail::describe(w) + " p=" + detail::fmt(p);
    const double ap = ap_constant(w, p, IntervalMode::kDyadic);
    const double ap_grid = ap_constant(w, p, IntervalMode::kGridAligned);
    const double a1 = a1_constant(w, IntervalMode::kDyadic);
    const double ainf = ainfty_constant(w);
    const double dual = std::pow(ap_constant(derived_weight(w, p), p / (p - 1.0), IntervalMode::kDyadic), p - 1.0);
    const double tol = 1e-12;
    o.check(ap - (1.0 - tol), tag + " ap=" + detail::fmt(ap));
    o.check(ap_grid - ap * (1.0 - tol), tag + " grid ap below dyadic");
    o.check(a1 - ap * (1.0 - tol), tag + " a1 below ap");
    o.check(1e-9 * ap - std::abs(dual - ap), tag + " duality gap=" + detail::fmt(dual - ap));
    o.check(ainf - (1.0 - tol), tag + " ainfty=" + detail::fmt(ainf));
    o.values = {ainf / a1};
    return o;
  });
  auto r = detail::summarize("weights", opt, outcomes);
  double c = 0.0;
  for (const auto& o : outcomes) c = std::max(c, o.values.at(0));
  r.metrics.emplace_back("max_ainfty_over_a1", c);
  return r;
}

/// (<|f|^r>_Q)^{1/r} <= <|f|>_Q + 2 (r - 1) <M_r(f chi_Q)>_Q with M_r
/// grid-aligned within Q, r in {1.1, 1.5, 2}, absolute tolerance 1e-12.
inline FuzzReport fuzz_prop42(const FuzzOptions& opt) {
  const std::vector<double> rs{1.1, 1.5, 2.0};
  auto outcomes = detail::run_trials(opt, 7, [&](std::size_t t, Rng& rng) {
    detail::TrialOutcome o;
    const int J = detail::draw_resolution(opt, rng, 1, 8);
    const auto f = random_signal(J, rng);
    const auto q = random_interval(J, rng);
    const double r = rs[t % rs.size()];
    const auto cells = f.restrict_to(q);
    const StepSignal local(J - q.depth(), std::vector<double>(cells.begin(), cells.end()));
    const double lhs = detail::power_mean(cells, r);
    const double rhs = detail::power_mean(cells, 1.0) + 2.0 * (r - 1.0) * maximal(local, r, IntervalMode::kGridAligned).mean();
    o.check(rhs - lhs + 1e-12, detail::describe(f) + " Q=" + q.to_string() + " r=" + detail::fmt(r) +
                                   " lhs=" + detail::fmt(lhs) + " rhs=" + detail::fmt(rhs));
    return o;
  });
  return detail::summarize("prop42", opt, outcomes);
}

/// M_{s_w} w <= 2 [w]_{A_1} w pointwise with s_w = 1 + 1/(4 [w]_{A_1}), all
/// grid-aligned, for power weights x^a (a in (-0.95, 0]) and bounded-ratio
/// random weights.
inline FuzzReport fuzz_prop31i(const FuzzOptions& opt) {
  auto outcomes = detail::run_trials(opt, 8, [&](std::size_t t, Rng& rng) {
    detail::TrialOutcome o;
    const int J = detail::draw_resolution(opt, rng, 1, 8);
    const auto w = t % 2 == 0 ? power_weight_signal(uniform_real(rng, -0.95, 0.0), J)
                              : bounded_ratio_weight(J, rng, std::exp(uniform_real(rng, 0.0, std::log(100.0))));
    const WeightProfile profile(w);
    const double a1 = profile.a1(IntervalMode::kGridAligned);
    const double s = profile.s_w(IntervalMode::kGridAligned);
    const auto ms = maximal(w, s, IntervalMode::kGridAligned);
    double worst = std::numeric_limits<double>::infinity();
    std::size_t at = 0;
    for (std::size_t x = 0; x < w.size(); ++x) {
      const double rel = (2.0 * a1 * w[x] - ms[x]) / (2.0 * a1 * w[x]);
      if (rel < worst) {
        worst = rel;
        at = x;
      }
    }
    o.check(worst + 1e-12, detail::describe(w) + " a1=" + detail::fmt(a1) + " cell=" + std::to_string(at));
    return o;
  });
  return detail::summarize("prop31i", opt, outcomes);
}

inline FuzzReport run_fuzz(const std::string& suite, const FuzzOptions& opt) {
  if (opt.resolution && (*opt.resolution < 1 || *opt.resolution > 12)) {
    throw ConfigError("fuzz resolution must lie in [1, 12]");
  }
  if (suite == "modulus-identity") return fuzz_modulus_identity(opt);
  if (suite == "bit-algebra") return fuzz_bit_algebra(opt);
  if (suite == "sparse") return fuzz_sparse(opt);
  if (suite == "rearrangement") return fuzz_rearrangement(opt);
  if (suite == "orlicz") return fuzz_orlicz(opt);
  if (suite == "weights") return fuzz_weights(opt);
  if (suite == "prop42") return fuzz_prop42(opt);
  if (suite == "prop31i") return fuzz_prop31i(opt);
  throw ConfigError("unknown fuzz suite: " + suite);
}

inline void print_report(std::ostream& out, const FuzzReport& r) {
  out.precision(17);
  out << "suite " << r.suite << " seed " << r.seed << " trials " << r.trials << ": " << r.passed << " passed, "
      << r.failed << " failed, worst margin " << r.worst_margin << (r.ok() ? "" : " [HARD GATE FAILED]") << '\n';
  for (const auto& [k, v] : r.metrics) out << "  " << k << " = " << v << '\n';
  for (const auto& w : r.witnesses) out << "  witness " << w << '\n';
}

}  // namespace dyadiclab

#endif  // DYADICLAB_FUZZ_HPP_
