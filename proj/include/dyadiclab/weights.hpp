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

#ifndef DYADICLAB_WEIGHTS_HPP_
#define DYADICLAB_WEIGHTS_HPP_

// Muckenhoupt characteristics of step weights and the (power-scaled)
// Hardy-Littlewood maximal operator. Suprema are exact: they range over the
// finitely many dyadic or grid-aligned intervals of the weight's resolution.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "dyadiclab/core.hpp"
#include "dyadiclab/errors.hpp"
#include "dyadiclab/haar.hpp"
#include "dyadiclab/step_signal.hpp"

namespace dyadiclab {

namespace detail {

inline void require_weight(const StepSignal& w) {
  if (!w.strictly_positive()) throw DomainError("a weight must be strictly positive");
}

// Averages of v over every dyadic interval; level d has 2^d entries.
inline std::vector<std::vector<double>> dyadic_averages(std::span<const double> v, int J) {
  std::vector<std::vector<double>> avg(static_cast<std::size_t>(J) + 1);
  avg[static_cast<std::size_t>(J)].assign(v.begin(), v.end());
  for (int d = J - 1; d >= 0; --d) {
    const auto& below = avg[static_cast<std::size_t>(d) + 1];
    auto& level = avg[static_cast<std::size_t>(d)];
    level.resize(below.size() / 2);
    for (std::size_t k = 0; k < level.size(); ++k) level[k] = 0.5 * (below[2 * k] + below[2 * k + 1]);
  }
  return avg;
}

inline std::vector<std::vector<double>> dyadic_minima(std::span<const double> v, int J) {
  std::vector<std::vector<double>> mins(static_cast<std::size_t>(J) + 1);
  mins[static_cast<std::size_t>(J)].assign(v.begin(), v.end());
  for (int d = J - 1; d >= 0; --d) {
    const auto& below = mins[static_cast<std::size_t>(d) + 1];
    auto& level = mins[static_cast<std::size_t>(d)];
    level.resize(below.size() / 2);
    for (std::size_t k = 0; k < level.size(); ++k) level[k] = std::min(below[2 * k], below[2 * k + 1]);
  }
  return mins;
}

// Calls fn(a, b, avg_u, avg_v) for every grid interval [a, b) of the cell
// range, with running sums so that no prefix-sum cancellation occurs.
template <class Fn>
void for_each_grid_interval(std::span<const double> u, std::span<const double> v, Fn&& fn) {
  const std::size_t n = u.size();
  for (std::size_t a = 0; a < n; ++a) {
    double su = 0.0;
    double sv = 0.0;
    for (std::size_t b = a + 1; b <= n; ++b) {
      su += u[b - 1];
      sv += v[b - 1];
      const double m = static_cast<double>(b - a);
      fn(a, b, su / m, sv / m);
    }
  }
}

// Pointwise sup over containing intervals of a per-interval score, given as a
// function of the interval's average of u. Dyadic or grid mode.
template <class Score>
std::vector<double> maximal_of_averages(std::span<const double> u, int J, IntervalMode mode,
                                        Score&& score) {
  const std::size_t n = u.size();
  std::vector<double> out(n, 0.0);
  if (mode == IntervalMode::kDyadic) {
    const auto avg = dyadic_averages(u, J);
    for (std::size_t x = 0; x < n; ++x) {
      double best = 0.0;
      for (int d = 0; d <= J; ++d) best = std::max(best, score(avg[static_cast<std::size_t>(d)][x >> (J - d)]));
      out[x] = best;
    }
    return out;
  }
  std::vector<double> row(n + 1, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    double s = 0.0;
    for (std::size_t b = a + 1; b <= n; ++b) {
      s += u[b - 1];
      row[b] = score(s / static_cast<double>(b - a));
    }
    double running = 0.0;
    for (std::size_t b = n; b > a; --b) {
      running = std::max(running, row[b]);
      out[b - 1] = std::max(out[b - 1], running);
    }
  }
  return out;
}

}  // namespace detail

/// sigma = w^{-1/(p-1)}, the dual weight of w for L^p.
inline StepSignal derived_weight(const StepSignal& w, double p) {
  if (!(p > 1.0)) throw DomainError("derived_weight requires p > 1");
  detail::require_weight(w);
  const double e = -1.0 / (p - 1.0);
  return w.map([e](double v) { return std::pow(v, e); });
}

/// [w]_{A_p} = sup_Q <w>_Q <sigma>_Q^{p-1}.
inline double ap_constant(const StepSignal& w, double p, IntervalMode mode = IntervalMode::kDyadic) {
  if (!(p > 1.0)) throw DomainError("ap_constant requires p > 1");
  const StepSignal sigma = derived_weight(w, p);
  const int J = w.resolution();
  double best = 0.0;
  if (mode == IntervalMode::kDyadic) {
    const auto aw = detail::dyadic_averages(w.values(), J);
    const auto as = detail::dyadic_averages(sigma.values(), J);
    for (std::size_t d = 0; d < aw.size(); ++d) {
      for (std::size_t k = 0; k < aw[d].size(); ++k) {
        best = std::max(best, aw[d][k] * std::pow(as[d][k], p - 1.0));
      }
    }
  } else {
    detail::for_each_grid_interval(w.values(), sigma.values(),
                                   [&](std::size_t, std::size_t, double mw, double ms) {
                                     best = std::max(best, mw * std::pow(ms, p - 1.0));
                                   });
  }
  return best;
}

/// [w]_{A_1} = sup_Q <w>_Q / min_Q w.
inline double a1_constant(const StepSignal& w, IntervalMode mode = IntervalMode::kDyadic) {
  detail::require_weight(w);
  const int J = w.resolution();
  double best = 0.0;
  if (mode == IntervalMode::kDyadic) {
    const auto avg = detail::dyadic_averages(w.values(), J);
    const auto mins = detail::dyadic_minima(w.values(), J);
    for (std::size_t d = 0; d < avg.size(); ++d) {
      for (std::size_t k = 0; k < avg[d].size(); ++k) best = std::max(best, avg[d][k] / mins[d][k]);
    }
  } else {
    const auto v = w.values();
    for (std::size_t a = 0; a < v.size(); ++a) {
      double s = 0.0;
      double lo = std::numeric_limits<double>::infinity();
      for (std::size_t b = a + 1; b <= v.size(); ++b) {
        s += v[b - 1];
        lo = std::min(lo, v[b - 1]);
        best = std::max(best, s / static_cast<double>(b - a) / lo);
      }
    }
  }
  return best;
}

/// [w]_{A_inf} = sup_Q w(Q)^{-1} int_Q M_Q(w chi_Q), over dyadic Q, with M_Q
/// the dyadic maximal operator of the subtree D(Q).
inline double ainfty_constant(const StepSignal& w) {
  detail::require_weight(w);
  const int J = w.resolution();
  const auto avg = detail::dyadic_averages(w.values(), J);
  double best = 0.0;
  std::vector<double> chain;
  for (int d = 0; d <= J; ++d) {
    const std::size_t cells = std::size_t{1} << (J - d);
    for (std::size_t k = 0; k < avg[static_cast<std::size_t>(d)].size(); ++k) {
      double integral = 0.0;
      for (std::size_t x = k * cells; x < (k + 1) * cells; ++x) {
        double m = 0.0;
        for (int e = d; e <= J; ++e) m = std::max(m, avg[static_cast<std::size_t>(e)][x >> (J - e)]);
        integral += m;
      }
      // Both integrals carry the same cell measure, which cancels.
      best = std::max(best, integral / (avg[static_cast<std::size_t>(d)][k] * static_cast<double>(cells)));
    }
  }
  return best;
}

/// M_s f(x) = sup_{Q containing x} (<|f|^s>_Q)^{1/s}.
inline StepSignal maximal(const StepSignal& f, double s = 1.0, IntervalMode mode = IntervalMode::kDyadic) {
  if (!(s >= 1.0)) throw DomainError("maximal requires s >= 1");
  std::vector<double> powered(f.size());
  for (std::size_t c = 0; c < f.size(); ++c) powered[c] = std::pow(std::abs(f[c]), s);
  const double inv = 1.0 / s;
  auto out = detail::maximal_of_averages(powered, f.resolution(), mode,
                                         [inv](double m) { return std::pow(m, inv); });
  return StepSignal(f.resolution(), std::move(out));
}

/// A strictly positive weight with its characteristics. A_1 and A_inf are
/// computed at construction; A_p values are cached on first request, and the
/// cache is safe to read from several threads.
class WeightProfile {
 public:
  explicit WeightProfile(StepSignal w) : w_(std::move(w)) {
    detail::require_weight(w_);
    a1_dyadic_ = a1_constant(w_, IntervalMode::kDyadic);
    ainfty_ = ainfty_constant(w_);
  }

  WeightProfile(const WeightProfile& other) : w_(other.w_), a1_dyadic_(other.a1_dyadic_), ainfty_(other.ainfty_) {
    std::lock_guard lock(other.mutex_);
    ap_cache_ = other.ap_cache_;
  }
  WeightProfile& operator=(const WeightProfile&) = delete;

  const StepSignal& weight() const { return w_; }
  int resolution() const { return w_.resolution(); }

  double a1() const { return a1_dyadic_; }
  double a1(IntervalMode mode) const {
    return mode == IntervalMode::kDyadic ? a1_dyadic_ : a1_constant(w_, mode);
  }
  double ainfty() const { return ainfty_; }

  double ap(double p, IntervalMode mode = IntervalMode::kDyadic) const {
    const auto key = std::make_pair(p, mode);
    {
      std::lock_guard lock(mutex_);
      if (auto it = ap_cache_.find(key); it != ap_cache_.end()) return it->second;
    }
    const double value = ap_constant(w_, p, mode);
    std::lock_guard lock(mutex_);
    return ap_cache_.emplace(key, value).first->second;
  }

  // Exponent of the reverse Holder self-improvement of A_1 weights in one
  // dimension: s_w = 1 + 1 / (4 [w]_{A_1}).
  double s_w(IntervalMode mode = IntervalMode::kDyadic) const { return 1.0 + 1.0 / (4.0 * a1(mode)); }

  StepSignal sigma(double p) const { return derived_weight(w_, p); }

 private:
  StepSignal w_;
  double a1_dyadic_ = 1.0;
  double ainfty_ = 1.0;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<double, IntervalMode>, double> ap_cache_;
};

/// Cell averages of x^a on [0,1) at resolution J, in closed form:
/// 2^{-J a} ((k+1)^{a+1} - k^{a+1}) / (a+1) on cell k.
inline StepSignal power_weight_signal(double a, int resolution) {
  if (!(a > -1.0)) throw DomainError("power weight x^a needs a > -1 to be locally integrable");
  if (resolution < 0 || resolution > kMaxResolution) throw DomainError("resolution out of range");
  const std::size_t n = std::size_t{1} << resolution;
  if (a == 0.0) return StepSignal::constant(resolution, 1.0);
  const double b = a + 1.0;
  const double scale = std::pow(2.0, -static_cast<double>(resolution) * a) / b;
  std::vector<double> v(n);
  v[0] = scale;
  for (std::size_t k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    // (k+1)^b - k^b without cancellation.
    v[k] = scale * std::pow(kk, b) * std::expm1(b * std::log1p(1.0 / kk));
  }
  return StepSignal(resolution, std::move(v));
}

inline WeightProfile power_weight(double a, int resolution) {
  return WeightProfile(power_weight_signal(a, resolution));
}

}  // namespace dyadiclab

#endif  // DYADICLAB_WEIGHTS_HPP_
