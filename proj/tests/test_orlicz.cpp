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

#include <gtest/gtest.h>

#include <boost/math/tools/minima.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "dyadiclab/orlicz.hpp"
#include "dyadiclab/random.hpp"
#include "dyadiclab/weights.hpp"

namespace dyadiclab {
namespace {

// sup_{lower <= t <= 1e12} Phi(t) / t^e: a dense scan in log t, Brent's
// method on the bracket of the best scan point, and both endpoints.
double sup_oracle(const YoungFunction& phi, double e, double lower) {
  const auto ratio = [&](double u) { return phi(std::exp(u)) / std::exp(e * u); };
  const double a = std::log(lower), b = std::log(1e12);
  constexpr int kSteps = 200000;
  int best = 0;
  double best_val = ratio(a);
  for (int i = 1; i <= kSteps; ++i) {
    const double v = ratio(a + (b - a) * i / kSteps);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  const double lo = a + (b - a) * std::max(0, best - 1) / kSteps;
  const double hi = a + (b - a) * std::min(kSteps, best + 1) / kSteps;
  const auto r = boost::math::tools::brent_find_minima([&](double u) { return -ratio(u); }, lo, hi, 60);
  return std::max({best_val, -r.second, ratio(a), ratio(b)});
}

std::vector<YoungFunction> gauges() {
  return {YoungFunction::linear(), YoungFunction::power(1.5), YoungFunction::llog(), YoungFunction::konyagin(),
          YoungFunction::antonov(1), YoungFunction::antonov(2),
          YoungFunction("t^2 log(1+t)", [](double t) { return t * t * std::log1p(t); })};
}

TEST(YoungFunction, BasicShapeAndInverse) {
  auto rng = trial_rng(30, 0, 0);
  for (const auto& phi : gauges()) {
    EXPECT_EQ(phi(0.0), 0.0) << phi.name();
    for (int i = 0; i < 200; ++i) {
      const double x = uniform_real(rng, 0.0, 50.0), y = uniform_real(rng, 0.0, 50.0);
      EXPECT_LE(phi(0.5 * (x + y)), 0.5 * (phi(x) + phi(y)) * (1.0 + 1e-12) + 1e-300) << phi.name();
      EXPECT_LE(phi(std::min(x, y)), phi(std::max(x, y))) << phi.name();
    }
    for (double y : {0.1, 0.5, 1.0, 7.0}) EXPECT_NEAR(phi(phi.inverse(y)), y, 1e-12 * y) << phi.name();
  }
  EXPECT_EQ(YoungFunction::parse("tlog").name(), "tlog");
  EXPECT_THROW(YoungFunction::parse("sinh"), ConfigError);
  EXPECT_THROW(YoungFunction::power(0.5), DomainError);
}

TEST(Luxemburg, SpecExamples) {
  auto rng = trial_rng(31, 0, 0);
  const auto f = random_signal(5, rng);
  const auto q = DyadicInterval(1, 0);
  EXPECT_NEAR(luxemburg_norm(f, q, YoungFunction::linear()), f.abs().mean_on(q), 1e-12 * std::max(1.0, f.sup_abs()));
  EXPECT_NEAR(luxemburg_norm(StepSignal::indicator(3, DyadicInterval(1, 0)), DyadicInterval::unit(),
                             YoungFunction::power(2.0)),
              std::sqrt(0.5), 1e-12);
  EXPECT_EQ(luxemburg_norm(StepSignal::zero(3), DyadicInterval::unit(), YoungFunction::llog()), 0.0);
  for (double c : {-3.0, 0.25, 17.0}) {
    const auto phi = YoungFunction::llog();
    const double base = luxemburg_norm(f, DyadicInterval::unit(), phi);
    EXPECT_NEAR(luxemburg_norm(f.scaled(c), DyadicInterval::unit(), phi), std::abs(c) * base, 1e-10 * std::abs(c) * base);
  }
}

TEST(Luxemburg, DefiningEquationAndLemmaBound) {
  for (int t = 0; t < 300; ++t) {
    auto rng = trial_rng(32, 0, t);
    const int J = uniform_int(rng, 0, 6);
    const auto f = random_signal(J, rng);
    const auto q = random_interval(J, rng);
    const auto phis = gauges();
    const auto& phi = phis[t % phis.size()];
    const double norm = luxemburg_norm(f, q, phi);
    if (norm > 0.0) {
      const double m = mean_phi(f.restrict_to(q), phi, norm);
      EXPECT_LE(m, 1.0);
      EXPECT_GE(m, 1.0 - 1e-8);
    }
    for (double p : {1.5, 2.0, 3.0}) {
      const double xi = xi_phi(phi, p);
      if (!std::isfinite(xi)) continue;
      double s = 0.0;
      for (double v : f.restrict_to(q)) s += std::pow(std::abs(v), p);
      s /= static_cast<double>(f.restrict_to(q).size());
      EXPECT_LE(norm, std::pow(2.0 * xi * s, 1.0 / p) * (1.0 + 1e-9) + 1e-12) << phi.name() << " p=" << p;
    }
  }
}

TEST(OrliczMaximal, LinearGaugeIsHardyLittlewoodAndDominatesCells) {
  for (int t = 0; t < 20; ++t) {
    auto rng = trial_rng(33, 0, t);
    const int J = uniform_int(rng, 0, 6);
    const auto f = random_signal(J, rng);
    for (auto mode : {IntervalMode::kDyadic, IntervalMode::kGridAligned}) {
      const auto m = orlicz_maximal(f, YoungFunction::linear(), mode);
      const auto hl = maximal(f, 1.0, mode);
      for (std::size_t c = 0; c < f.size(); ++c) EXPECT_NEAR(m[c], hl[c], 1e-12 * std::max(1.0, hl[c]));
    }
    const auto phi = YoungFunction::konyagin();
    const auto m = orlicz_maximal(f, phi, IntervalMode::kDyadic);
    for (std::size_t c = 0; c < f.size(); ++c) {
      const DyadicInterval cell(J, static_cast<std::int64_t>(c));
      EXPECT_GE(m[c], luxemburg_norm(f, cell, phi) * (1.0 - 1e-12));
    }
  }
}

TEST(OrliczMaximal, PointwiseBoundByPowerMaximal) {
  for (int t = 0; t < 40; ++t) {
    auto rng = trial_rng(34, 0, t);
    const int J = uniform_int(rng, 0, 6);
    const auto f = random_signal(J, rng);
    const auto phis = gauges();
    const auto& phi = phis[t % phis.size()];
    for (double p : {1.5, 2.0, 3.0}) {
      const double xi = xi_phi(phi, p);
      if (!std::isfinite(xi)) continue;
      const auto lhs = orlicz_maximal(f, phi);
      const auto mp = maximal(f, p);
      const double c = std::pow(2.0 * xi, 1.0 / p);
      for (std::size_t x = 0; x < f.size(); ++x) EXPECT_LE(lhs[x], c * mp[x] * (1.0 + 1e-9) + 1e-12);
    }
  }
}

TEST(GammaXi, SpecExamples) {
  EXPECT_NEAR(gamma_phi(YoungFunction::power(2.0), 2.0), 1.0, 1e-12);
  for (double p : {1.25, 2.0, 5.0}) EXPECT_NEAR(gamma_phi(YoungFunction::linear(), p), 1.0, 1e-12);
  // t log(e + t) / t^2 is decreasing on [1, inf), so gamma = log(e + 1).
  EXPECT_NEAR(gamma_phi(YoungFunction::llog(), 2.0), std::log(std::numbers::e + 1.0), 1e-8);
  EXPECT_THROW(gamma_phi(YoungFunction::llog(), 1.0), DomainError);
}

TEST(GammaXi, DivergentSupremumIsFlagged) {
  const auto r = ratio_supremum(YoungFunction::power(3.0), 2.0, 1.0);
  EXPECT_TRUE(r.divergent);
  EXPECT_TRUE(std::isinf(r.value));
  EXPECT_TRUE(std::isinf(gamma_phi(YoungFunction::power(3.0), 2.0)));  // p' = 2 < 3
  EXPECT_TRUE(std::isinf(xi_phi(YoungFunction::power(2.0), 1.5)));
}

TEST(GammaXi, MatchIndependentOptimizer) {
  for (const auto& phi : gauges()) {
    for (double p : {1.25, 1.5, 5.0 / 3.0, 2.0, 3.0}) {
      const double q = p / (p - 1.0);
      const double g = gamma_phi(phi, p);
      if (std::isfinite(g)) {
        EXPECT_NEAR(g, sup_oracle(phi, q, 1.0), 1e-8 * g) << phi.name() << " gamma p=" << p;
      }
      const double x = xi_phi(phi, p);
      if (std::isfinite(x)) {
        EXPECT_NEAR(x, sup_oracle(phi, p, phi.inverse(0.5)), 1e-8 * x) << phi.name() << " xi p=" << p;
      }
    }
  }
  // An interior maximum: t^2 log(1+t) / t^{5/2} peaks near t = 3.92.
  const YoungFunction phi("t^2 log(1+t)", [](double t) { return t * t * std::log1p(t); });
  const auto r = ratio_supremum(phi, 2.5, 1.0);
  EXPECT_FALSE(r.divergent);
  EXPECT_GT(r.argmax, 3.0);
  EXPECT_LT(r.argmax, 5.0);
  EXPECT_NEAR(r.value, sup_oracle(phi, 2.5, 1.0), 1e-8 * r.value);
}

}  // namespace
}  // namespace dyadiclab
