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

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "dyadiclab/core.hpp"
#include "dyadiclab/dyadic_interval.hpp"
#include "dyadiclab/random.hpp"
#include "dyadiclab/step_signal.hpp"

namespace dyadiclab {
namespace {

StepSignal sig(int J, std::vector<double> v) { return StepSignal(J, std::move(v)); }

std::vector<double> cells_of(const StepSignal& f, std::size_t a, std::size_t b) {
  return {f.values().begin() + static_cast<std::ptrdiff_t>(a), f.values().begin() + static_cast<std::ptrdiff_t>(b)};
}

std::vector<double> cells_in(const StepSignal& f, const DyadicInterval& q) {
  const int J = f.resolution();
  const auto a = static_cast<std::size_t>(q.first_cell(J));
  return cells_of(f, a, a + static_cast<std::size_t>(q.cell_count(J)));
}

// Smallest cell value v with |{f > v}| <= |Q|/2 and |{f < v}| <= |Q|/2.
double median_oracle(const std::vector<double>& v) {
  double best = std::numeric_limits<double>::infinity();
  for (double c : v) {
    std::size_t above = 0, below = 0;
    for (double x : v) {
      above += x > c;
      below += x < c;
    }
    if (2 * above <= v.size() && 2 * below <= v.size()) best = std::min(best, c);
  }
  return best;
}

// inf over candidate centers c of the (floor(lambda m) + 1)-th largest |v - c|.
double oscillation_oracle(const std::vector<double>& v, double lambda) {
  const std::size_t m = v.size();
  const auto k = static_cast<std::size_t>(std::floor(lambda * static_cast<double>(m)));
  if (k >= m) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> dev(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      const double c = 0.5 * (v[i] + v[j]);
      for (std::size_t t = 0; t < m; ++t) dev[t] = std::abs(v[t] - c);
      std::nth_element(dev.begin(), dev.begin() + static_cast<std::ptrdiff_t>(k), dev.end(), std::greater<>());
      best = std::min(best, dev[k]);
    }
  }
  return best;
}

// Sup of the oracle oscillation over intervals [a, b) of the cell grid
// containing each cell; `dyadic` restricts to dyadic intervals.
std::vector<double> sharp_oracle(const StepSignal& f, double lambda, bool dyadic) {
  const std::size_t n = f.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b <= n; ++b) {
      const std::size_t len = b - a;
      if (dyadic && ((len & (len - 1)) != 0 || a % len != 0)) continue;
      const double w = oscillation_oracle(cells_of(f, a, b), lambda);
      for (std::size_t c = a; c < b; ++c) out[c] = std::max(out[c], w);
    }
  }
  return out;
}

TEST(DyadicInterval, ParentChildrenAndNesting) {
  const DyadicInterval q(3, 5);
  EXPECT_EQ(q.parent(), DyadicInterval(2, 2));
  EXPECT_EQ(q.left_child(), DyadicInterval(4, 10));
  EXPECT_EQ(q.right_child(), DyadicInterval(4, 11));
  EXPECT_DOUBLE_EQ(q.length(), 0.125);
  EXPECT_DOUBLE_EQ(q.left_endpoint(), 0.625);
  EXPECT_TRUE(q.parent().contains(q));
  EXPECT_TRUE(q.disjoint(DyadicInterval(3, 4)));
  EXPECT_EQ(q.ancestor(10), DyadicInterval::unit());
  EXPECT_EQ(q.first_cell(5), 20);
  EXPECT_EQ(q.cell_count(5), 4);
  EXPECT_THROW(DyadicInterval(2, 4), DomainError);
  EXPECT_THROW(DyadicInterval(-1, 0), DomainError);
}

TEST(DyadicInterval, NestedOrDisjoint) {
  std::vector<DyadicInterval> all;
  for (int d = 0; d <= 4; ++d) {
    for (std::int64_t k = 0; k < (1 << d); ++k) all.emplace_back(d, k);
  }
  for (const auto& a : all) {
    for (const auto& b : all) {
      const bool overlap = a.left_endpoint() < b.right_endpoint() && b.left_endpoint() < a.right_endpoint();
      EXPECT_EQ(overlap, a.contains(b) || b.contains(a));
      EXPECT_EQ(!overlap, a.disjoint(b));
    }
  }
}

TEST(StepSignal, ValidatesShapeAndValues) {
  EXPECT_THROW(sig(2, {1, 2, 3}), DomainError);
  EXPECT_THROW(sig(1, {1, std::nan("")}), DomainError);
  EXPECT_THROW(sig(1, {1, std::numeric_limits<double>::infinity()}), DomainError);
  EXPECT_NO_THROW(sig(0, {7}));
  EXPECT_THROW(sig(1, {1, 2}) + sig(2, {1, 2, 3, 4}), DomainError);
}

TEST(StepSignal, TextRoundTripAndCountCheck) {
  auto rng = trial_rng(1, 0, 0);
  const auto f = gaussian_signal(5, rng);
  std::stringstream ss;
  write_signal(ss, f);
  const auto back = read_signal(ss);
  EXPECT_EQ(back.kind, "signal");
  EXPECT_EQ(back.signal, f);

  std::stringstream spec_text("J=2 kind=spectrum\n0.5 0.5 0 0\n");
  EXPECT_EQ(read_signal(spec_text).kind, "spectrum");

  std::stringstream few("J=2\n1 2 3\n");
  EXPECT_THROW(read_signal(few), IoError);
  std::stringstream many("J=1\n1 2 3\n");
  EXPECT_THROW(read_signal(many), IoError);
  std::stringstream junk("J=1\n1 x\n");
  EXPECT_THROW(read_signal(junk), IoError);
  std::stringstream noheader("1 2\n");
  EXPECT_THROW(read_signal(noheader), IoError);
}

TEST(Median, SpecExamples) {
  EXPECT_EQ(median(sig(2, {1, 2, 3, 4}), DyadicInterval::unit()), 2.0);
  EXPECT_EQ(median(StepSignal::constant(3, 2.5), DyadicInterval(2, 1)), 2.5);
  EXPECT_EQ(median(sig(1, {0, 1}), DyadicInterval::unit()), 0.0);
  EXPECT_THROW(median(sig(1, {0, 1}), DyadicInterval(2, 0)), DomainError);
}

TEST(Median, MatchesDefinitionOnRandomSignals) {
  for (int t = 0; t < 200; ++t) {
    auto rng = trial_rng(2, 0, t);
    const int J = uniform_int(rng, 0, 6);
    const auto f = random_signal(J, rng);
    const auto q = random_interval(J, rng);
    const auto v = cells_in(f, q);
    const double m = median(f, q);
    EXPECT_EQ(m, median_oracle(v));
    std::size_t above = 0, below = 0;
    for (double x : v) {
      above += x > m;
      below += x < m;
    }
    EXPECT_LE(2 * above, v.size());
    EXPECT_LE(2 * below, v.size());
  }
}

TEST(Rearrangement, SpecExamples) {
  const auto f = sig(2, {0, 0, 0, 1});
  EXPECT_EQ(rearrangement_at(f, DyadicInterval::unit(), 0.125), 1.0);
  EXPECT_EQ(rearrangement_at(f, DyadicInterval::unit(), 0.25), 0.0);
  EXPECT_EQ(rearrangement_at(StepSignal::constant(3, -2.0), DyadicInterval(1, 1), 0.3), 2.0);
  EXPECT_THROW(rearrangement_at(f, DyadicInterval::unit(), 1.0), DomainError);
  EXPECT_THROW(rearrangement_at(f, DyadicInterval::unit(), -0.1), DomainError);
}

TEST(Rearrangement, IsSortedPermutationOfMagnitudes) {
  auto rng = trial_rng(3, 0, 0);
  const auto f = gaussian_signal(7, rng);
  const auto r = rearrange(f);
  EXPECT_TRUE(std::is_sorted(r.sorted_abs.begin(), r.sorted_abs.end(), std::greater<>()));
  std::vector<double> mags;
  for (double v : f.values()) mags.push_back(std::abs(v));
  std::sort(mags.begin(), mags.end(), std::greater<>());
  EXPECT_EQ(mags, r.sorted_abs);
  // Distribution function identity: |{|f| > f*(t)}| <= t.
  for (double t : {0.0, 0.01, 0.3, 0.77}) {
    const double s = r.at(t);
    double measure = 0.0;
    for (double v : f.values()) measure += std::abs(v) > s ? f.cell_measure() : 0.0;
    EXPECT_LE(measure, t + 1e-15);
  }
}

TEST(Oscillation, SpecExamples) {
  const auto f = sig(2, {0, 0, 0, 1});
  EXPECT_EQ(oscillation(f, DyadicInterval::unit(), 0.25), 0.0);
  EXPECT_EQ(oscillation(f, DyadicInterval::unit(), 0.125), 0.5);
  EXPECT_EQ(oscillation(StepSignal::constant(4, 3.0), DyadicInterval(1, 0), 0.3), 0.0);
  EXPECT_THROW(oscillation(f, DyadicInterval::unit(), 0.0), DomainError);
  EXPECT_THROW(oscillation(f, DyadicInterval::unit(), 1.0), DomainError);
}

TEST(Oscillation, WindowFormulaMatchesBruteForce) {
  for (int J = 0; J <= 6; ++J) {
    const int signals = J <= 4 ? 12 : 3;
    for (int t = 0; t < signals; ++t) {
      auto rng = trial_rng(4, static_cast<std::uint64_t>(J), static_cast<std::uint64_t>(t));
      const auto f = random_signal(J, rng);
      for (double lambda : {0.125, 0.25, 0.5}) {
        for (int d = 0; d <= J; ++d) {
          for (std::int64_t k = 0; k < (std::int64_t{1} << d); ++k) {
            const DyadicInterval q(d, k);
            const auto v = cells_in(f, q);
            ASSERT_NEAR(oscillation(f, q, lambda), oscillation_oracle(v, lambda), 1e-12)
                << "J=" << J << " Q=" << q.to_string() << " lambda=" << lambda;
          }
        }
      }
    }
  }
}

TEST(SharpMaximal, SpecExamples) {
  for (auto mode : {IntervalMode::kDyadic, IntervalMode::kGridAligned}) {
    const auto z = sharp_maximal(StepSignal::constant(4, 2.0), 0.125, mode);
    for (double v : z.values()) EXPECT_EQ(v, 0.0);
  }
  const auto m = sharp_maximal(sig(1, {0, 1}), 0.125, IntervalMode::kDyadic);
  EXPECT_EQ(m[0], 0.5);
  EXPECT_EQ(m[1], 0.5);
}

TEST(SharpMaximal, MatchesBruteForceInBothModes) {
  for (int t = 0; t < 30; ++t) {
    auto rng = trial_rng(5, 0, t);
    const int J = uniform_int(rng, 1, 5);
    const auto f = random_signal(J, rng);
    for (double lambda : {0.125, 0.25}) {
      const auto d = sharp_maximal(f, lambda, IntervalMode::kDyadic);
      const auto g = sharp_maximal(f, lambda, IntervalMode::kGridAligned);
      const auto d_ref = sharp_oracle(f, lambda, true);
      const auto g_ref = sharp_oracle(f, lambda, false);
      for (std::size_t c = 0; c < f.size(); ++c) {
        EXPECT_NEAR(d[c], d_ref[c], 1e-12);
        EXPECT_NEAR(g[c], g_ref[c], 1e-12);
        EXPECT_GE(g[c], d[c]);
      }
    }
  }
}

TEST(SharpMaximal, LineProfileEqualsGridModeOnZeroPaddedSignal) {
  for (int t = 0; t < 20; ++t) {
    auto rng = trial_rng(6, 0, t);
    const int J = uniform_int(rng, 1, 6);
    const auto f = random_signal(J, rng);
    const std::size_t n = f.size();
    std::vector<double> padded(2 * n, 0.0);
    std::copy(f.values().begin(), f.values().end(), padded.begin() + static_cast<std::ptrdiff_t>(n / 2));
    const StepSignal wide(J + 1, padded);
    const std::vector<double> lambdas{0.25, 0.125, 1.0 / 64};
    const auto lines = sharp_maximal_on_line(f, lambdas, n / 2);
    ASSERT_EQ(lines.size(), lambdas.size());
    for (std::size_t l = 0; l < lambdas.size(); ++l) {
      const auto ref = sharp_oracle(wide, lambdas[l], false);
      ASSERT_EQ(lines[l].values.size(), 2 * n);
      EXPECT_EQ(lines[l].offset, n / 2);
      for (std::size_t c = 0; c < 2 * n; ++c) EXPECT_NEAR(lines[l].values[c], ref[c], 1e-12);
    }
  }
}

TEST(WeakNorm, SpecExamples) {
  EXPECT_DOUBLE_EQ(weak_norm(StepSignal::indicator(3, DyadicInterval(1, 0)), 2.0), std::sqrt(0.5));
  EXPECT_EQ(weak_norm(StepSignal::zero(3), 1.5), 0.0);
  EXPECT_DOUBLE_EQ(weak_norm(StepSignal::constant(2, -3.0), 2.0), 3.0);
  EXPECT_THROW(weak_norm(StepSignal::zero(1), 0.0), DomainError);
}

TEST(WeakNorm, MatchesLevelScanAndChebyshev) {
  for (int t = 0; t < 100; ++t) {
    auto rng = trial_rng(7, 0, t);
    const int J = uniform_int(rng, 0, 8);
    const auto f = random_signal(J, rng);
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
      // sup_s s mu(|f| > s)^{1/p}, approached from just below each level.
      double ref = 0.0;
      for (double level : f.values()) {
        const double s = std::abs(level);
        if (s == 0.0) continue;
        double mu = 0.0;
        for (double v : f.values()) mu += std::abs(v) >= s ? f.cell_measure() : 0.0;
        ref = std::max(ref, s * std::pow(mu, 1.0 / p));
      }
      EXPECT_NEAR(weak_norm(f, p), ref, 1e-12 * std::max(1.0, ref));
      EXPECT_LE(weak_norm(f, p), lp_norm(f, p) * (1.0 + 1e-12));
    }
  }
}

TEST(LpNorm, SpecExamples) {
  EXPECT_DOUBLE_EQ(lp_norm(StepSignal::indicator(2, DyadicInterval(1, 0)), 2.0), std::sqrt(0.5));
  const auto w = sig(2, {1, 2, 3, 6});
  EXPECT_DOUBLE_EQ(lp_norm(StepSignal::constant(2, 1.0), 3.0, w), std::cbrt(3.0));
  EXPECT_DOUBLE_EQ(lp_norm(sig(1, {1, 2}), 1.0, sig(1, {1, 3})), 3.5);
  EXPECT_THROW(lp_norm(sig(1, {1, 2}), 2.0, StepSignal::constant(2, 1.0)), DomainError);
  EXPECT_THROW(lp_norm(sig(1, {1, 2}), 0.5), DomainError);
}

TEST(IntervalMode, Parsing) {
  EXPECT_EQ(parse_interval_mode("dyadic"), IntervalMode::kDyadic);
  EXPECT_EQ(parse_interval_mode("grid"), IntervalMode::kGridAligned);
  EXPECT_EQ(parse_interval_mode("grid_aligned"), IntervalMode::kGridAligned);
  EXPECT_THROW(parse_interval_mode("cubes"), ConfigError);
}

}  // namespace
}  // namespace dyadiclab
