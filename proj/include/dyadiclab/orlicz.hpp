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

#ifndef DYADICLAB_ORLICZ_HPP_
#define DYADICLAB_ORLICZ_HPP_

// Young functions, mean Luxemburg norms, the Orlicz maximal function and the
// growth functionals gamma_Phi and xi_Phi.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dyadiclab/core.hpp"
#include "dyadiclab/errors.hpp"
#include "dyadiclab/step_signal.hpp"

namespace dyadiclab {

/// A convex increasing Phi: [0, inf) -> [0, inf) with Phi(0) = 0.
class YoungFunction {
 public:
  YoungFunction(std::string name, std::function<double(double)> eval)
      : name_(std::move(name)), eval_(std::move(eval)) {}

  const std::string& name() const { return name_; }
  double operator()(double t) const { return eval_(t); }

  // Smallest t with Phi(t) >= y, by bisection.
  double inverse(double y) const {
    if (!(y >= 0.0)) throw DomainError("Young function inverse needs y >= 0");
    if (y == 0.0) return 0.0;
    double lo = 0.0;
    double hi = 1.0;
    while (eval_(hi) < y) {
      lo = hi;
      hi *= 2.0;
      if (!std::isfinite(hi)) throw DomainError("Young function does not reach " + std::to_string(y));
    }
    for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (eval_(mid) < y ? lo : hi) = mid;
    }
    return hi;
  }

  static YoungFunction linear() {
    return {"t", [](double t) { return t; }};
  }
  static YoungFunction power(double q) {
    if (!(q >= 1.0)) throw DomainError("t^q is a Young function only for q >= 1");
    return {"t^" + std::to_string(q), [q](double t) { return std::pow(t, q); }};
  }
  // t log(e + t)
  static YoungFunction llog() {
    return {"tlog", [](double t) { return t * std::log(std::numbers::e + t); }};
  }
  // t log log(e^e + t), the lacunary conjecture gauge.
  static YoungFunction konyagin() {
    static const double ee = std::exp(std::numbers::e);
    return {"konyagin", [](double t) { return t * std::log(std::log(ee + t)); }};
  }
  // t (log(e + t))^m log log log(e^{e^e} + t).
  static YoungFunction antonov(int m) {
    static const double eee = std::exp(std::exp(std::numbers::e));
    return {"antonov" + std::to_string(m), [m](double t) {
              return t * std::pow(std::log(std::numbers::e + t), m) *
                     std::log(std::log(std::log(eee + t)));
            }};
  }

  static YoungFunction parse(const std::string& spec) {
    if (spec == "t" || spec == "linear") return linear();
    if (spec == "tlog") return llog();
    if (spec == "konyagin") return konyagin();
    if (spec.rfind("antonov", 0) == 0) return antonov(std::stoi(spec.substr(7)));
    if (spec.rfind("t^", 0) == 0) return power(std::stod(spec.substr(2)));
    throw ConfigError("unknown Young function '" + spec + "'");
  }

 private:
  std::string name_;
  std::function<double(double)> eval_;
};

inline double mean_phi(std::span<const double> values, const YoungFunction& phi, double lambda) {
  double s = 0.0;
  for (double v : values) s += phi(std::abs(v) / lambda);
  return s / static_cast<double>(values.size());
}

/// inf{lambda > 0 : <Phi(|f| / lambda)> <= 1} over a block of equal-measure
/// cells. The bisection returns the upper end of the final bracket, so the
/// defining average never exceeds 1.
inline double luxemburg_norm_of(std::span<const double> values, const YoungFunction& phi) {
  double top = 0.0;
  for (double v : values) {
    if (!std::isfinite(v)) throw DomainError("luxemburg_norm: non-finite value");
    top = std::max(top, std::abs(v));
  }
  if (top == 0.0) return 0.0;
  double hi = top / phi.inverse(1.0);
  while (mean_phi(values, phi, hi) > 1.0) hi *= 2.0;
  double lo = 0.5 * hi;
  while (mean_phi(values, phi, lo) <= 1.0) {
    hi = lo;
    lo *= 0.5;
  }
  for (int it = 0; it < 300 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (mean_phi(values, phi, mid) <= 1.0 ? hi : lo) = mid;
  }
  return hi;
}

inline double luxemburg_norm(const StepSignal& f, const DyadicInterval& q, const YoungFunction& phi) {
  detail::require_inside(f, q);
  return luxemburg_norm_of(f.restrict_to(q), phi);
}

/// M_Phi f(x) = sup_{Q containing x} ||f||_{Phi, Q}.
inline StepSignal orlicz_maximal(const StepSignal& f, const YoungFunction& phi,
                                 IntervalMode mode = IntervalMode::kDyadic) {
  const int J = f.resolution();
  const auto values = f.values();
  std::vector<double> out(f.size(), 0.0);
  if (mode == IntervalMode::kDyadic) {
    for (int d = 0; d <= J; ++d) {
      const std::size_t cells = std::size_t{1} << (J - d);
      for (std::size_t k = 0; k < (std::size_t{1} << d); ++k) {
        const double v = luxemburg_norm_of(values.subspan(k * cells, cells), phi);
        for (std::size_t c = k * cells; c < (k + 1) * cells; ++c) out[c] = std::max(out[c], v);
      }
    }
  } else {
    out = detail::sup_over_containing_intervals(f.size(), [&](std::size_t a, std::vector<double>& row) {
      for (std::size_t b = a + 1; b <= f.size(); ++b) row[b] = luxemburg_norm_of(values.subspan(a, b - a), phi);
    });
  }
  return StepSignal(J, std::move(out));
}

/// Result of a numerical supremum of Phi(t) / t^exponent over [lower, upper].
struct RatioSupremum {
  double value = 0.0;
  double argmax = 0.0;
  bool divergent = false;
};

inline constexpr double kRatioSupUpper = 1e12;

/// sup_{t >= lower} Phi(t) / t^exponent on a log-spaced grid up to 1e12,
/// refined by golden-section search around the best grid point. The tail
/// beyond the argmax must be non-increasing over at least three decades;
/// otherwise the supremum is reported divergent with value +inf.
inline RatioSupremum ratio_supremum(const YoungFunction& phi, double exponent, double lower) {
  if (!(lower > 0.0)) throw DomainError("ratio_supremum needs lower > 0");
  auto ratio = [&](double log_t) {
    const double t = std::exp(log_t);
    return phi(t) / std::pow(t, exponent);
  };
  const double a = std::log(lower);
  const double b = std::log(kRatioSupUpper);
  constexpr int kPerDecade = 64;
  const int steps = std::max(8, static_cast<int>(std::ceil((b - a) / std::log(10.0) * kPerDecade)));
  std::vector<double> grid(static_cast<std::size_t>(steps) + 1);
  std::vector<double> vals(grid.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i] = a + (b - a) * static_cast<double>(i) / steps;
    vals[i] = ratio(grid[i]);
    if (vals[i] > vals[best]) best = i;
  }
  const double tail_decades = (b - grid[best]) / std::log(10.0);
  bool monotone_tail = tail_decades >= 3.0;
  for (std::size_t i = best + 1; monotone_tail && i < grid.size(); ++i) {
    if (vals[i] > vals[i - 1] * (1.0 + 1e-13)) monotone_tail = false;
  }
  if (!monotone_tail) {
    return {std::numeric_limits<double>::infinity(), std::exp(grid[best]), true};
  }
  double lo = grid[best > 0 ? best - 1 : 0];
  double hi = grid[std::min(best + 1, grid.size() - 1)];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = ratio(x1);
  double f2 = ratio(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(hi)); ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = ratio(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = ratio(x1);
    }
  }
  RatioSupremum r{vals[best], std::exp(grid[best]), false};
  for (auto [x, fx] : {std::pair{x1, f1}, std::pair{x2, f2}}) {
    if (fx > r.value) r = {fx, std::exp(x), false};
  }
  return r;
}

/// gamma_Phi(p) = sup_{t >= 1} Phi(t) / t^{p'}.
inline double gamma_phi(const YoungFunction& phi, double p) {
  if (!(p > 1.0)) throw DomainError("gamma_phi requires p > 1");
  return ratio_supremum(phi, p / (p - 1.0), 1.0).value;
}

/// xi_Phi(p) = sup_{t >= Phi^{-1}(1/2)} Phi(t) / t^p.
inline double xi_phi(const YoungFunction& phi, double p) {
  if (!(p > 1.0)) throw DomainError("xi_phi requires p > 1");
  return ratio_supremum(phi, p, phi.inverse(0.5)).value;
}

}  // namespace dyadiclab

#endif  // DYADICLAB_ORLICZ_HPP_
