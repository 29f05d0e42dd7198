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

#ifndef DYADICLAB_CORE_HPP_
#define DYADICLAB_CORE_HPP_

// Exact arithmetic on step signals: medians, non-increasing rearrangements,
// local mean oscillations, the local sharp maximal function and (weak) L^p
// norms. Everything here is a pure function of its inputs.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dyadiclab/dyadic_interval.hpp"
#include "dyadiclab/errors.hpp"
#include "dyadiclab/step_signal.hpp"

namespace dyadiclab {

enum class IntervalMode { kDyadic, kGridAligned };

inline std::string to_string(IntervalMode mode) {
  return mode == IntervalMode::kDyadic ? "dyadic" : "grid";
}

inline IntervalMode parse_interval_mode(const std::string& s) {
  if (s == "dyadic") return IntervalMode::kDyadic;
  if (s == "grid" || s == "grid_aligned" || s == "grid-aligned") return IntervalMode::kGridAligned;
  throw ConfigError("unknown interval mode '" + s + "' (expected dyadic or grid)");
}

namespace detail {

inline void require_lambda(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw DomainError("lambda must lie in (0,1), got " + std::to_string(lambda));
  }
}

inline void require_inside(const StepSignal& f, const DyadicInterval& q) {
  if (q.depth() > f.resolution()) {
    throw DomainError("interval " + q.to_string() + " is deeper than resolution " +
                      std::to_string(f.resolution()));
  }
}

// Canonical lower median of a sorted multiset: the smallest element v with
// #{> v} <= m/2 and #{< v} <= m/2.
inline double lower_median_sorted(std::span<const double> sorted) {
  const std::size_t m = sorted.size();
  std::size_t i = 0;
  while (i < m) {
    std::size_t j = i;
    while (j + 1 < m && sorted[j + 1] == sorted[i]) ++j;
    const std::size_t below = i;
    const std::size_t above = m - (j + 1);
    if (2 * below <= m && 2 * above <= m) return sorted[i];
    i = j + 1;
  }
  return sorted.empty() ? 0.0 : sorted[m / 2];  // unreachable for m > 0
}

// Number of cells that may be discarded when evaluating a rearrangement at
// lambda |Q| on an interval of m cells.
inline std::size_t discard_count(double lambda, std::size_t m) {
  return static_cast<std::size_t>(std::floor(lambda * static_cast<double>(m)));
}

struct OscillationWindow {
  double omega = 0.0;   // half width of the narrowest admissible window
  double center = 0.0;  // its midpoint, a minimizing constant c
};

// inf_c ((f - c) chi_Q)^*(lambda |Q|) for the sorted cell values of Q.
// Ties between equally narrow windows resolve to the lowest one.
inline OscillationWindow oscillation_sorted(std::span<const double> sorted, double lambda) {
  const std::size_t m = sorted.size();
  const std::size_t k = discard_count(lambda, m);
  if (m == 0 || k >= m) return {};
  const std::size_t keep = m - k;
  OscillationWindow best{(sorted[keep - 1] - sorted[0]) / 2.0, (sorted[keep - 1] + sorted[0]) / 2.0};
  for (std::size_t i = 1; i <= k; ++i) {
    const double half = (sorted[i + keep - 1] - sorted[i]) / 2.0;
    if (half < best.omega) best = {half, (sorted[i + keep - 1] + sorted[i]) / 2.0};
  }
  return best;
}

inline std::vector<double> sorted_copy(std::span<const double> values) {
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  return v;
}

// For every cell x of a line of L cells returns max over intervals [a,b) with
// a <= x < b of score(a, b). `scores(a, row)` fills row[b] for b in (a, L].
inline std::vector<double> sup_over_containing_intervals(
    std::size_t length, const std::function<void(std::size_t, std::vector<double>&)>& scores) {
  std::vector<double> result(length, 0.0);
  std::vector<double> row(length + 1, 0.0);
  for (std::size_t a = 0; a < length; ++a) {
    std::fill(row.begin(), row.end(), 0.0);
    scores(a, row);
    double running = 0.0;
    for (std::size_t b = length; b > a; --b) {
      running = std::max(running, row[b]);
      result[b - 1] = std::max(result[b - 1], running);
    }
  }
  return result;
}

// Grid-aligned local sharp maximal function on a line of cells, for several
// lambdas at once. Only intervals meeting [active_begin, active_end) are
// scored; the caller guarantees the line vanishes outside that range, so the
// skipped intervals have zero oscillation.
inline std::vector<std::vector<double>> line_sharp_maximal(std::span<const double> line,
                                                           std::span<const double> lambdas,
                                                           std::size_t active_begin,
                                                           std::size_t active_end) {
  const std::size_t length = line.size();
  std::vector<std::vector<double>> result(lambdas.size(), std::vector<double>(length, 0.0));
  std::vector<std::vector<double>> rows(lambdas.size(), std::vector<double>(length + 1, 0.0));
  std::vector<double> sorted;
  sorted.reserve(length);
  for (std::size_t a = 0; a < length && a < active_end; ++a) {
    sorted.clear();
    for (auto& row : rows) std::fill(row.begin() + static_cast<std::ptrdiff_t>(a), row.end(), 0.0);
    for (std::size_t b = a + 1; b <= length; ++b) {
      const double v = line[b - 1];
      sorted.insert(std::upper_bound(sorted.begin(), sorted.end(), v), v);
      if (b <= active_begin) continue;
      for (std::size_t l = 0; l < lambdas.size(); ++l) {
        rows[l][b] = oscillation_sorted(sorted, lambdas[l]).omega;
      }
    }
    for (std::size_t l = 0; l < lambdas.size(); ++l) {
      double running = 0.0;
      for (std::size_t b = length; b > a; --b) {
        running = std::max(running, rows[l][b]);
        result[l][b - 1] = std::max(result[l][b - 1], running);
      }
    }
  }
  return result;
}

inline double weak_norm_of(std::span<const double> values, double cell_measure, double p) {
  std::vector<double> mags(values.size());
  std::transform(values.begin(), values.end(), mags.begin(), [](double v) { return std::abs(v); });
  std::sort(mags.begin(), mags.end(), std::greater<>());
  double best = 0.0;
  for (std::size_t i = 0; i < mags.size(); ++i) {
    if (mags[i] == 0.0) break;
    if (i + 1 < mags.size() && mags[i + 1] == mags[i]) continue;
    const double measure = static_cast<double>(i + 1) * cell_measure;
    best = std::max(best, mags[i] * std::pow(measure, 1.0 / p));
  }
  return best;
}

}  // namespace detail

/// Canonical (smallest admissible) median of f over Q.
inline double median(const StepSignal& f, const DyadicInterval& q) {
  detail::require_inside(f, q);
  const auto sorted = detail::sorted_copy(f.restrict_to(q));
  return detail::lower_median_sorted(sorted);
}

/// Non-increasing rearrangement of |f| restricted to a set of cells, viewed
/// as a function on [0, infinity) that vanishes beyond the set's measure.
struct Rearrangement {
  int resolution = 0;
  std::vector<double> sorted_abs;  // non-increasing

  // Right-continuous: the (floor(t 2^J) + 1)-th largest value.
  double at(double t) const {
    if (t < 0.0) throw DomainError("rearrangement evaluated at negative t");
    const double pos = std::floor(std::ldexp(t, resolution));
    if (pos >= static_cast<double>(sorted_abs.size())) return 0.0;
    return sorted_abs[static_cast<std::size_t>(pos)];
  }
};

inline Rearrangement rearrange(std::span<const double> values, int resolution) {
  Rearrangement r{resolution, {}};
  r.sorted_abs.resize(values.size());
  std::transform(values.begin(), values.end(), r.sorted_abs.begin(),
                 [](double v) { return std::abs(v); });
  std::sort(r.sorted_abs.begin(), r.sorted_abs.end(), std::greater<>());
  return r;
}

inline Rearrangement rearrange(const StepSignal& f) { return rearrange(f.values(), f.resolution()); }

/// (f chi_Q)^*(t) for 0 <= t < |Q|.
inline double rearrangement_at(const StepSignal& f, const DyadicInterval& q, double t) {
  detail::require_inside(f, q);
  if (!(t >= 0.0 && t < q.length())) {
    throw DomainError("rearrangement_at requires 0 <= t < |Q|");
  }
  return rearrange(f.restrict_to(q), f.resolution()).at(t);
}

/// Local mean oscillation omega_lambda(f; Q) = inf_c ((f - c) chi_Q)^*(lambda |Q|).
inline double oscillation(const StepSignal& f, const DyadicInterval& q, double lambda) {
  detail::require_lambda(lambda);
  detail::require_inside(f, q);
  const auto sorted = detail::sorted_copy(f.restrict_to(q));
  return detail::oscillation_sorted(sorted, lambda).omega;
}

/// Local sharp maximal function M^#_lambda f. Dyadic mode takes the supremum
/// over dyadic intervals, grid mode over every interval with endpoints on the
/// 2^-J grid inside [0,1).
inline StepSignal sharp_maximal(const StepSignal& f, double lambda,
                                IntervalMode mode = IntervalMode::kGridAligned) {
  detail::require_lambda(lambda);
  const int J = f.resolution();
  std::vector<double> out(f.size(), 0.0);
  if (mode == IntervalMode::kDyadic) {
    for (int d = 0; d <= J; ++d) {
      for (std::int64_t k = 0; k < (std::int64_t{1} << d); ++k) {
        const DyadicInterval q(d, k);
        const double w = oscillation(f, q, lambda);
        const auto first = static_cast<std::size_t>(q.first_cell(J));
        const auto count = static_cast<std::size_t>(q.cell_count(J));
        for (std::size_t c = first; c < first + count; ++c) out[c] = std::max(out[c], w);
      }
    }
  } else {
    const double lambdas[] = {lambda};
    out = std::move(detail::line_sharp_maximal(f.values(), lambdas, 0, f.size())[0]);
  }
  return StepSignal(J, std::move(out));
}

/// A function on the real line that is constant on cells of width 2^-J and
/// supported on cells [-offset, size - offset). Cell `offset` is [0, 2^-J).
struct LineProfile {
  int resolution = 0;
  std::size_t offset = 0;
  std::vector<double> values;

  double cell_measure() const { return std::ldexp(1.0, -resolution); }
};

/// Grid-aligned M^#_lambda of f extended by zero to the real line, evaluated
/// on [-pad 2^-J, 1 + pad 2^-J) with intervals confined to that window.
/// Restricting the window only removes intervals, so every value is a lower
/// bound for the sharp maximal function over all grid intervals of the line.
inline std::vector<LineProfile> sharp_maximal_on_line(const StepSignal& f,
                                                      std::span<const double> lambdas,
                                                      std::size_t pad) {
  for (double l : lambdas) detail::require_lambda(l);
  std::vector<double> line(f.size() + 2 * pad, 0.0);
  std::copy(f.values().begin(), f.values().end(), line.begin() + static_cast<std::ptrdiff_t>(pad));
  auto maxima = detail::line_sharp_maximal(line, lambdas, pad, pad + f.size());
  std::vector<LineProfile> out;
  out.reserve(maxima.size());
  for (auto& m : maxima) out.push_back(LineProfile{f.resolution(), pad, std::move(m)});
  return out;
}

/// Weak L^p quasi-norm sup_s s |{|f| > s}|^{1/p}.
inline double weak_norm(const StepSignal& f, double p) {
  if (!(p > 0.0)) throw DomainError("weak_norm requires p > 0");
  return detail::weak_norm_of(f.values(), f.cell_measure(), p);
}

inline double weak_norm(const LineProfile& f, double p) {
  if (!(p > 0.0)) throw DomainError("weak_norm requires p > 0");
  return detail::weak_norm_of(f.values, f.cell_measure(), p);
}

/// ||f||_{L^p(w)}; the unweighted overload takes w = 1.
inline double lp_norm(const StepSignal& f, double p) {
  if (!(p >= 1.0)) throw DomainError("lp_norm requires p >= 1");
  double s = 0.0;
  for (double v : f.values()) s += std::pow(std::abs(v), p);
  return std::pow(s * f.cell_measure(), 1.0 / p);
}

inline double lp_norm(const StepSignal& f, double p, const StepSignal& w) {
  if (!(p >= 1.0)) throw DomainError("lp_norm requires p >= 1");
  if (w.resolution() != f.resolution()) throw DomainError("lp_norm: resolution mismatch");
  if (!w.strictly_positive()) throw DomainError("lp_norm: weight must be strictly positive");
  double s = 0.0;
  for (std::size_t c = 0; c < f.size(); ++c) s += std::pow(std::abs(f[c]), p) * w[c];
  return std::pow(s * f.cell_measure(), 1.0 / p);
}

}  // namespace dyadiclab

#endif  // DYADICLAB_CORE_HPP_
