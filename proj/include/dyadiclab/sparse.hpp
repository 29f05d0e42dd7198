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

#ifndef DYADICLAB_SPARSE_HPP_
#define DYADICLAB_SPARSE_HPP_

// Sparse families from local mean oscillations and the sparse operators
// A_{r,S}, T_{S,m} and T_S.
//
// Construction at a node Q with canonical median m and narrowest admissible
// window [lo, hi] (half width omega = omega_lambda(f;Q)): let E_Q be the
// cells of Q whose value lies outside [lo, hi]; there are at most
// floor(lambda |Q| 2^J) of them. The children of Q are the maximal dyadic
// P strictly inside Q with |E_Q ∩ P| > |P|/4. They cover less than
// 4 |E_Q| <= 4 lambda |Q|, so the family is sparse whenever lambda <= 1/8.
// A child P has |E_Q ∩ P| <= |P|/2, hence its own window meets [lo, hi],
// which chains to |f - m_f(Q_0)| <= 2 sum_Q omega_Q chi_Q.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <ostream>
#include <vector>

#include "dyadiclab/core.hpp"
#include "dyadiclab/dyadic_interval.hpp"
#include "dyadiclab/errors.hpp"
#include "dyadiclab/step_signal.hpp"

namespace dyadiclab {

struct SparseNode {
  DyadicInterval interval;
  double median = 0.0;
  double oscillation = 0.0;
  double window_low = 0.0;
  double window_high = 0.0;
  std::vector<std::size_t> children{};  // indices into SparseFamily::nodes
  std::int64_t exceptional_cells = 0;  // cells of Q not covered by children
  std::int64_t cells = 0;

  double exceptional_ratio() const {
    return static_cast<double>(exceptional_cells) / static_cast<double>(cells);
  }
};

struct SparseFamily {
  int resolution = 0;
  double lambda = 0.125;
  std::vector<SparseNode> nodes;  // nodes[0] is the root Q_0, parents precede children

  const SparseNode& root() const { return nodes.front(); }
  std::size_t size() const { return nodes.size(); }
};

namespace detail {

// Maximal dyadic P strictly inside Q (given by its cell range) with
// 4 |marked ∩ P| > |P|, found by a top-down walk over a count pyramid.
inline void stopping_intervals(const DyadicInterval& q, int J, const std::vector<char>& marked,
                               std::vector<DyadicInterval>& out) {
  const std::size_t m = static_cast<std::size_t>(q.cell_count(J));
  const int levels = J - q.depth();
  // counts[l] holds, for sub-intervals at relative depth l, the marked cells.
  std::vector<std::vector<std::int64_t>> counts(static_cast<std::size_t>(levels) + 1);
  counts[static_cast<std::size_t>(levels)].assign(marked.begin(), marked.end());
  for (int l = levels - 1; l >= 0; --l) {
    const auto& below = counts[static_cast<std::size_t>(l) + 1];
    auto& level = counts[static_cast<std::size_t>(l)];
    level.resize(below.size() / 2);
    for (std::size_t k = 0; k < level.size(); ++k) level[k] = below[2 * k] + below[2 * k + 1];
  }
  if (counts[0][0] == 0) return;
  struct Item {
    int l;
    std::size_t k;
  };
  std::vector<Item> stack;
  if (levels > 0) {
    stack.push_back({1, 1});
    stack.push_back({1, 0});
  }
  while (!stack.empty()) {
    const Item it = stack.back();
    stack.pop_back();
    const std::int64_t c = counts[static_cast<std::size_t>(it.l)][it.k];
    if (c == 0) continue;
    const std::int64_t size = static_cast<std::int64_t>(m >> it.l);
    if (4 * c > size) {
      out.emplace_back(q.depth() + it.l, (q.index() << it.l) + static_cast<std::int64_t>(it.k));
    } else if (it.l < levels) {
      stack.push_back({it.l + 1, 2 * it.k + 1});
      stack.push_back({it.l + 1, 2 * it.k});
    }
  }
}

}  // namespace detail

/// Builds the sparse family of f below Q0. lambda must lie in (0, 1/4];
/// sparseness is guaranteed for lambda <= 1/8 and verified otherwise.
inline SparseFamily build_sparse(const StepSignal& f, const DyadicInterval& q0, double lambda = 0.125) {
  if (!(lambda > 0.0 && lambda <= 0.25)) throw DomainError("build_sparse requires lambda in (0, 1/4]");
  detail::require_inside(f, q0);
  const int J = f.resolution();
  SparseFamily family{J, lambda, {}};
  std::vector<std::size_t> pending{0};
  family.nodes.push_back(SparseNode{.interval = q0});
  std::vector<DyadicInterval> stops;
  while (!pending.empty()) {
    const std::size_t idx = pending.back();
    pending.pop_back();
    const DyadicInterval q = family.nodes[idx].interval;
    const auto cells = f.restrict_to(q);
    const auto sorted = detail::sorted_copy(cells);
    const std::size_t m = sorted.size();
    const std::size_t keep = m - detail::discard_count(lambda, m);
    // Lowest narrowest window of `keep` consecutive sorted values.
    std::size_t start = 0;
    for (std::size_t i = 1; i + keep <= m; ++i) {
      if (sorted[i + keep - 1] - sorted[i] < sorted[start + keep - 1] - sorted[start]) start = i;
    }
    SparseNode& node = family.nodes[idx];
    node.median = detail::lower_median_sorted(sorted);
    node.window_low = sorted[start];
    node.window_high = sorted[start + keep - 1];
    node.oscillation = (node.window_high - node.window_low) / 2.0;
    node.cells = static_cast<std::int64_t>(m);
    std::vector<char> marked(m);
    for (std::size_t c = 0; c < m; ++c) {
      marked[c] = cells[c] < node.window_low || cells[c] > node.window_high;
    }
    stops.clear();
    detail::stopping_intervals(q, J, marked, stops);
    std::int64_t covered = 0;
    for (const auto& p : stops) covered += p.cell_count(J);
    family.nodes[idx].exceptional_cells = static_cast<std::int64_t>(m) - covered;
    for (const auto& p : stops) {
      family.nodes[idx].children.push_back(family.nodes.size());
      pending.push_back(family.nodes.size());
      family.nodes.push_back(SparseNode{.interval = p});
    }
  }
  return family;
}

/// min over nodes of |E(Q)| / |Q|.
inline double verify_sparseness(const SparseFamily& s) {
  double worst = 1.0;
  for (const auto& node : s.nodes) worst = std::min(worst, node.exceptional_ratio());
  return worst;
}

namespace detail {

template <class Term>
StepSignal sum_over_nodes(const SparseFamily& s, Term&& term) {
  const int J = s.resolution;
  std::vector<double> out(std::size_t{1} << J, 0.0);
  for (const auto& node : s.nodes) {
    const double v = term(node);
    if (v == 0.0) continue;
    const auto first = static_cast<std::size_t>(node.interval.first_cell(J));
    const auto count = static_cast<std::size_t>(node.interval.cell_count(J));
    for (std::size_t c = first; c < first + count; ++c) out[c] += v;
  }
  return StepSignal(J, std::move(out));
}

inline double power_mean(std::span<const double> v, double r) {
  double s = 0.0;
  for (double x : v) s += std::pow(std::abs(x), r);
  return std::pow(s / static_cast<double>(v.size()), 1.0 / r);
}

inline void require_family_resolution(const SparseFamily& s, const StepSignal& f) {
  if (f.resolution() != s.resolution) throw DomainError("signal and sparse family resolutions differ");
}

}  // namespace detail

/// Smallest C with |f - m_f(Q_0)| <= C sum_{Q in S} omega_lambda(f;Q) chi_Q
/// on Q_0, cells where both sides vanish counting as satisfied.
inline double domination_check(const StepSignal& f, const SparseFamily& s, double lambda) {
  detail::require_family_resolution(s, f);
  const StepSignal rhs = detail::sum_over_nodes(s, [&](const SparseNode& node) {
    return lambda == s.lambda ? node.oscillation : oscillation(f, node.interval, lambda);
  });
  const double m0 = s.root().median;
  const auto& q0 = s.root().interval;
  const auto first = static_cast<std::size_t>(q0.first_cell(s.resolution));
  const auto count = static_cast<std::size_t>(q0.cell_count(s.resolution));
  double worst = 0.0;
  for (std::size_t c = first; c < first + count; ++c) {
    const double lhs = std::abs(f[c] - m0);
    if (lhs == 0.0) continue;
    if (rhs[c] == 0.0) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, lhs / rhs[c]);
  }
  return worst;
}

/// A_{r,S} f = sum_Q (<|f|^r>_Q)^{1/r} chi_Q. r = 1 gives T_S.
inline StepSignal apply_Ars(const SparseFamily& s, const StepSignal& f, double r) {
  if (!(r >= 1.0 && r <= 2.0)) throw DomainError("apply_Ars requires r in [1, 2]");
  detail::require_family_resolution(s, f);
  return detail::sum_over_nodes(s, [&](const SparseNode& node) {
    return detail::power_mean(f.restrict_to(node.interval), r);
  });
}

/// T_{S,m} f = sum_Q <|f|>_{Q^(m)} chi_Q, where Q^(m) is the m-fold dyadic
/// ancestor of Q, stopping at [0,1).
inline StepSignal apply_TSm(const SparseFamily& s, const StepSignal& f, int m) {
  if (m < 0) throw DomainError("apply_TSm requires m >= 0");
  detail::require_family_resolution(s, f);
  return detail::sum_over_nodes(s, [&](const SparseNode& node) {
    return detail::power_mean(f.restrict_to(node.interval.ancestor(m)), 1.0);
  });
}

inline StepSignal apply_TS(const SparseFamily& s, const StepSignal& f) { return apply_TSm(s, f, 0); }

/// One node per line: depth index median oscillation |E(Q)|/|Q|.
inline void write_family(std::ostream& out, const SparseFamily& s) {
  out << "# depth index median oscillation exceptional_ratio\n";
  out.precision(17);
  for (const auto& node : s.nodes) {
    out << node.interval.depth() << ' ' << node.interval.index() << ' ' << node.median << ' '
        << node.oscillation << ' ' << node.exceptional_ratio() << '\n';
  }
}

}  // namespace dyadiclab

#endif  // DYADICLAB_SPARSE_HPP_
