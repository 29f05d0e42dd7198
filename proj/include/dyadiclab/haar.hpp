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

#ifndef DYADICLAB_HAAR_HPP_
#define DYADICLAB_HAAR_HPP_

// Haar system h_I = |I|^{-1/2} (chi_{left(I)} - chi_{right(I)}), martingale
// transforms, and the Walsh-modulated transforms T_n whose moduli reproduce
// the Walsh partial sums.

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "dyadiclab/dyadic_interval.hpp"
#include "dyadiclab/errors.hpp"
#include "dyadiclab/step_signal.hpp"
#include "dyadiclab/walsh.hpp"

namespace dyadiclab {

/// Integrals of a step signal over every dyadic interval, level by level.
class HaarPyramid {
 public:
  explicit HaarPyramid(std::span<const double> values, int resolution)
      : resolution_(resolution), sums_(static_cast<std::size_t>(resolution) + 1) {
    const double h = std::ldexp(1.0, -resolution);
    auto& finest = sums_[static_cast<std::size_t>(resolution)];
    finest.resize(values.size());
    for (std::size_t c = 0; c < values.size(); ++c) finest[c] = values[c] * h;
    for (int d = resolution - 1; d >= 0; --d) {
      const auto& below = sums_[static_cast<std::size_t>(d) + 1];
      auto& level = sums_[static_cast<std::size_t>(d)];
      level.resize(below.size() / 2);
      for (std::size_t k = 0; k < level.size(); ++k) level[k] = below[2 * k] + below[2 * k + 1];
    }
  }

  explicit HaarPyramid(const StepSignal& f) : HaarPyramid(f.values(), f.resolution()) {}

  int resolution() const { return resolution_; }

  double integral(int depth, std::int64_t k) const {
    return sums_[static_cast<std::size_t>(depth)][static_cast<std::size_t>(k)];
  }

  // <f, h_I> for I = [k 2^-d, (k+1) 2^-d), d < J.
  double coefficient(int depth, std::int64_t k) const {
    const double len = std::ldexp(1.0, -depth);
    const auto& below = sums_[static_cast<std::size_t>(depth) + 1];
    return (below[2 * static_cast<std::size_t>(k)] - below[2 * static_cast<std::size_t>(k) + 1]) /
           std::sqrt(len);
  }

  // Value on cell x of the Haar detail sum_{|I| = 2^-d} <f, h_I> h_I.
  double detail_at(int depth, std::size_t cell) const {
    const int shift = resolution_ - depth - 1;
    const std::size_t child = cell >> shift;
    const std::size_t k = child >> 1;
    const auto& below = sums_[static_cast<std::size_t>(depth) + 1];
    const double diff = (below[2 * k] - below[2 * k + 1]) * std::ldexp(1.0, depth);
    return (child & 1u) ? -diff : diff;
  }

 private:
  int resolution_;
  std::vector<std::vector<double>> sums_;
};

/// <f, h_I>, left child positive.
inline double haar_coefficient(const StepSignal& f, const DyadicInterval& interval) {
  if (interval.depth() >= f.resolution()) {
    throw DomainError("Haar function of " + interval.to_string() +
                      " is not resolved at J=" + std::to_string(f.resolution()));
  }
  const int J = f.resolution();
  const auto left = f.restrict_to(interval.left_child());
  const auto right = f.restrict_to(interval.right_child());
  double diff = 0.0;
  for (double v : left) diff += v;
  for (double v : right) diff -= v;
  return diff * std::ldexp(1.0, -J) / std::sqrt(interval.length());
}

/// The scales selected by n: the depths k_j of the set bits of n, i.e. the
/// interval lengths 2^{-k_j} on which the modulated transform keeps the Haar
/// coefficients. Empty for n = 0.
struct MartingaleMask {
  std::uint64_t n = 0;
  std::vector<int> selected_depths;  // decreasing

  std::vector<double> selected_scales() const {
    std::vector<double> s;
    for (int d : selected_depths) s.push_back(std::ldexp(1.0, -d));
    return s;
  }
  bool selects(int depth) const { return depth < 64 && ((n >> depth) & 1u); }
};

inline MartingaleMask martingale_mask(std::uint64_t n) {
  MartingaleMask m{n, {}};
  for (int b = 63; b >= 0; --b) {
    if ((n >> b) & 1u) m.selected_depths.push_back(b);
  }
  return m;
}

/// T_n f = <f W_n> + sum over I with |I| selected by n of <f W_n, h_I> h_I.
///
/// Multiplying by W_n permutes the Walsh spectrum by k -> k xor n. The set
/// {k xor n : k <= n} is {0} together with the Haar blocks [2^d, 2^{d+1}) of
/// the set bits d of n, so W_n T_n f = W_n f and |T_n f| = |W_n f| cellwise.
/// For n = 0 the transform is the mean of f.
inline StepSignal modulated_transform(const StepSignal& f, std::uint64_t n) {
  const int J = f.resolution();
  if (n >= (std::uint64_t{1} << J)) throw DomainError("modulated_transform requires n < 2^J");
  std::vector<double> g(f.size());
  for (std::size_t c = 0; c < g.size(); ++c) g[c] = f[c] * walsh_sign(n, c, J);
  const HaarPyramid pyramid(g, J);
  const double mean = pyramid.integral(0, 0);
  const auto mask = martingale_mask(n);
  std::vector<double> out(f.size(), mean);
  for (int d : mask.selected_depths) {
    for (std::size_t c = 0; c < out.size(); ++c) out[c] += pyramid.detail_at(d, c);
  }
  return StepSignal(J, std::move(out));
}

/// sum_I eps(I) <f, h_I> h_I over all dyadic I of depth < J. `eps` is any
/// callable DyadicInterval -> double.
template <class Eps>
StepSignal martingale_transform(const StepSignal& f, Eps&& eps) {
  const int J = f.resolution();
  const HaarPyramid pyramid(f);
  std::vector<double> out(f.size(), 0.0);
  for (int d = 0; d < J; ++d) {
    const std::int64_t count = std::int64_t{1} << d;
    const std::size_t cells = std::size_t{1} << (J - d);
    for (std::int64_t k = 0; k < count; ++k) {
      const double e = eps(DyadicInterval(d, k));
      if (e == 0.0) continue;
      const std::size_t first = static_cast<std::size_t>(k) * cells;
      for (std::size_t c = first; c < first + cells; ++c) out[c] += e * pyramid.detail_at(d, c);
    }
  }
  return StepSignal(J, std::move(out));
}

}  // namespace dyadiclab

#endif  // DYADICLAB_HAAR_HPP_
