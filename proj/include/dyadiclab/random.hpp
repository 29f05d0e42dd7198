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

#ifndef DYADICLAB_RANDOM_HPP_
#define DYADICLAB_RANDOM_HPP_

// Seeded generators for test signals and weights. Every trial draws from its
// own engine derived from (seed, stream, trial), so results do not depend
// on the order in which trials run.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dyadiclab/haar.hpp"
#include "dyadiclab/step_signal.hpp"
#include "dyadiclab/walsh.hpp"
#include "dyadiclab/weights.hpp"

namespace dyadiclab {

using Rng = std::mt19937_64;

inline Rng trial_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return Rng(seq);
}

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double uniform_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline StepSignal gaussian_signal(int J, Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  std::vector<double> v(std::size_t{1} << J);
  for (double& x : v) x = nd(rng);
  return StepSignal(J, std::move(v));
}

inline StepSignal rademacher_signal(int J, Rng& rng) {
  std::vector<double> v(std::size_t{1} << J);
  for (double& x : v) x = (rng() & 1u) ? 1.0 : -1.0;
  return StepSignal(J, std::move(v));
}

// Small integers: every Walsh coefficient and partial sum is then a dyadic
// rational computed without rounding.
inline StepSignal integer_signal(int J, Rng& rng, int bound = 8) {
  std::vector<double> v(std::size_t{1} << J);
  for (double& x : v) x = uniform_int(rng, -bound, bound);
  return StepSignal(J, std::move(v));
}

inline StepSignal two_value_signal(int J, Rng& rng) {
  const double lo = uniform_real(rng, -2.0, 2.0);
  const double hi = lo + uniform_real(rng, 0.1, 4.0);
  const double density = uniform_real(rng, 0.05, 0.95);
  std::vector<double> v(std::size_t{1} << J);
  for (double& x : v) x = uniform_real(rng, 0.0, 1.0) < density ? hi : lo;
  return StepSignal(J, std::move(v));
}

inline StepSignal spike_signal(int J, Rng& rng) {
  std::vector<double> v(std::size_t{1} << J, 0.0);
  const int spikes = uniform_int(rng, 1, 3);
  for (int i = 0; i < spikes; ++i) {
    v[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(v.size()) - 1))] = uniform_real(rng, -5.0, 5.0);
  }
  return StepSignal(J, std::move(v));
}

inline StepSignal random_walk_signal(int J, Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  std::vector<double> v(std::size_t{1} << J);
  double s = 0.0;
  for (double& x : v) x = (s += nd(rng));
  return StepSignal(J, std::move(v));
}

inline DyadicInterval random_interval(int J, Rng& rng) {
  const int d = uniform_int(rng, 0, J);
  const auto k = std::uniform_int_distribution<std::int64_t>(0, (std::int64_t{1} << d) - 1)(rng);
  return DyadicInterval(d, k);
}

inline StepSignal random_indicator(int J, Rng& rng) {
  return StepSignal::indicator(J, random_interval(J, rng)).scaled(uniform_real(rng, 0.5, 3.0));
}

inline StepSignal random_walsh(int J, Rng& rng) {
  const auto k = std::uniform_int_distribution<std::uint64_t>(0, (std::uint64_t{1} << J) - 1)(rng);
  return walsh_character(k, J);
}

/// A mixed corpus: Gaussian, sign, integer, two-value, spike, random walk,
/// dyadic indicator and Walsh character signals in rotation.
inline StepSignal random_signal(int J, Rng& rng) {
  switch (uniform_int(rng, 0, 7)) {
    case 0: return gaussian_signal(J, rng);
    case 1: return rademacher_signal(J, rng);
    case 2: return integer_signal(J, rng);
    case 3: return two_value_signal(J, rng);
    case 4: return spike_signal(J, rng);
    case 5: return random_walk_signal(J, rng);
    case 6: return random_indicator(J, rng);
    default: return random_walsh(J, rng);
  }
}

/// Weight fuzz family: power weights x^a with a in (a_lo, a_hi), two-value
/// step weights, and log-random walks with dynamic range at most 1e6.
inline StepSignal random_weight(int J, Rng& rng, double a_lo = -0.9, double a_hi = 0.9) {
  switch (uniform_int(rng, 0, 2)) {
    case 0: return power_weight_signal(uniform_real(rng, a_lo, a_hi), J);
    case 1: {
      const double ratio = std::exp(uniform_real(rng, 0.0, std::log(1e3)));
      auto s = two_value_signal(J, rng);
      const double lo = *std::min_element(s.values().begin(), s.values().end());
      return s.map([&](double x) { return x == lo ? 1.0 : ratio; });
    }
    default: {
      std::normal_distribution<double> nd(0.0, 0.5);
      std::vector<double> logs(std::size_t{1} << J);
      double s = 0.0;
      for (double& x : logs) x = (s += nd(rng));
      const double lo = *std::min_element(logs.begin(), logs.end());
      const double cap = std::log(1e6);
      std::vector<double> v(logs.size());
      for (std::size_t c = 0; c < v.size(); ++c) v[c] = std::exp(std::min(logs[c] - lo, cap));
      return StepSignal(J, std::move(v));
    }
  }
}

/// Weights with max/min ratio at most `max_ratio`: i.i.d. log-uniform cells.
inline StepSignal bounded_ratio_weight(int J, Rng& rng, double max_ratio = 50.0) {
  std::vector<double> v(std::size_t{1} << J);
  for (double& x : v) x = std::exp(uniform_real(rng, 0.0, std::log(max_ratio)));
  return StepSignal(J, std::move(v));
}

}  // namespace dyadiclab

#endif  // DYADICLAB_RANDOM_HPP_
