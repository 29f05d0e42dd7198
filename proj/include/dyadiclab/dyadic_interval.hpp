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

#ifndef DYADICLAB_DYADIC_INTERVAL_HPP_
#define DYADICLAB_DYADIC_INTERVAL_HPP_

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>

#include "dyadiclab/errors.hpp"

namespace dyadiclab {

// Maximum supported depth. Cell indices are 64-bit; 2^-kMaxDepth still
// resolves exactly in a double.
inline constexpr int kMaxDepth = 52;

/// The dyadic interval [k 2^-j, (k+1) 2^-j) of the unit interval.
///
/// Two dyadic intervals are either nested or disjoint. The ordering is by
/// (depth, index), i.e. the breadth-first order of the dyadic tree.
class DyadicInterval {
 public:
  constexpr DyadicInterval() = default;

  DyadicInterval(int depth, std::int64_t index) : depth_(depth), index_(index) {
    if (depth < 0 || depth > kMaxDepth) {
      throw DomainError("dyadic interval depth out of range: " + std::to_string(depth));
    }
    if (index < 0 || index >= (std::int64_t{1} << depth)) {
      throw DomainError("dyadic interval index " + std::to_string(index) +
                        " outside [0, 2^" + std::to_string(depth) + ")");
    }
  }

  static DyadicInterval unit() { return DyadicInterval(0, 0); }

  int depth() const { return depth_; }
  std::int64_t index() const { return index_; }

  double length() const { return std::ldexp(1.0, -depth_); }
  double left_endpoint() const { return std::ldexp(static_cast<double>(index_), -depth_); }
  double right_endpoint() const { return std::ldexp(static_cast<double>(index_ + 1), -depth_); }

  bool is_root() const { return depth_ == 0; }

  DyadicInterval parent() const {
    if (depth_ == 0) throw DomainError("the unit interval has no parent");
    return DyadicInterval(depth_ - 1, index_ >> 1);
  }
  DyadicInterval left_child() const { return DyadicInterval(depth_ + 1, 2 * index_); }
  DyadicInterval right_child() const { return DyadicInterval(depth_ + 1, 2 * index_ + 1); }

  // Ancestor `generations` levels up; stops at the unit interval.
  DyadicInterval ancestor(int generations) const {
    const int up = generations < depth_ ? generations : depth_;
    return DyadicInterval(depth_ - up, index_ >> up);
  }

  bool contains(const DyadicInterval& other) const {
    return other.depth_ >= depth_ && (other.index_ >> (other.depth_ - depth_)) == index_;
  }
  bool disjoint(const DyadicInterval& other) const {
    return !contains(other) && !other.contains(*this);
  }

  // Cell range [first_cell, first_cell + cell_count) at resolution J >= depth.
  std::int64_t first_cell(int resolution) const {
    require_resolution(resolution);
    return index_ << (resolution - depth_);
  }
  std::int64_t cell_count(int resolution) const {
    require_resolution(resolution);
    return std::int64_t{1} << (resolution - depth_);
  }

  // Dyadic interval of depth `depth` containing cell `cell` at resolution J.
  static DyadicInterval containing_cell(std::int64_t cell, int resolution, int depth) {
    return DyadicInterval(depth, cell >> (resolution - depth));
  }

  auto operator<=>(const DyadicInterval&) const = default;

  std::string to_string() const {
    return "[" + std::to_string(index_) + "/2^" + std::to_string(depth_) + ", " +
           std::to_string(index_ + 1) + "/2^" + std::to_string(depth_) + ")";
  }

 private:
  void require_resolution(int resolution) const {
    if (resolution < depth_) {
      throw DomainError("interval " + to_string() + " is finer than resolution " +
                        std::to_string(resolution));
    }
  }

  int depth_ = 0;
  std::int64_t index_ = 0;
};

}  // namespace dyadiclab

#endif  // DYADICLAB_DYADIC_INTERVAL_HPP_
