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

#ifndef DYADICLAB_STEP_SIGNAL_HPP_
#define DYADICLAB_STEP_SIGNAL_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dyadiclab/dyadic_interval.hpp"
#include "dyadiclab/errors.hpp"

namespace dyadiclab {

// Largest resolution a StepSignal may have (2^24 cells).
inline constexpr int kMaxResolution = 24;

/// A function on [0,1) that is constant on each of the 2^J cells
/// [c 2^-J, (c+1) 2^-J). All values are finite.
class StepSignal {
 public:
  StepSignal() : StepSignal(0, std::vector<double>{0.0}) {}

  StepSignal(int resolution, std::vector<double> values)
      : resolution_(resolution), values_(std::move(values)) {
    if (resolution < 0 || resolution > kMaxResolution) {
      throw DomainError("resolution out of range: " + std::to_string(resolution));
    }
    if (values_.size() != (std::size_t{1} << resolution)) {
      throw DomainError("signal at resolution " + std::to_string(resolution) + " needs " +
                        std::to_string(std::size_t{1} << resolution) + " values, got " +
                        std::to_string(values_.size()));
    }
    for (double v : values_) {
      if (!std::isfinite(v)) throw DomainError("signal values must be finite");
    }
  }

  static StepSignal constant(int resolution, double c) {
    return StepSignal(resolution, std::vector<double>(std::size_t{1} << resolution, c));
  }
  static StepSignal zero(int resolution) { return constant(resolution, 0.0); }

  // Characteristic function of a dyadic interval.
  static StepSignal indicator(int resolution, const DyadicInterval& q) {
    std::vector<double> v(std::size_t{1} << resolution, 0.0);
    const auto first = q.first_cell(resolution);
    std::fill_n(v.begin() + first, q.cell_count(resolution), 1.0);
    return StepSignal(resolution, std::move(v));
  }

  int resolution() const { return resolution_; }
  std::size_t size() const { return values_.size(); }
  double cell_measure() const { return std::ldexp(1.0, -resolution_); }

  double operator[](std::size_t c) const { return values_[c]; }
  std::span<const double> values() const& { return values_; }
  // Taking the values of a temporary moves them out, so a range-for over
  // `g(f).values()` does not outlive its storage.
  std::vector<double> values() && { return std::move(values_); }

  // Values on the cells of q.
  std::span<const double> restrict_to(const DyadicInterval& q) const {
    if (q.depth() > resolution_) {
      throw DomainError("interval " + q.to_string() + " is finer than the signal resolution");
    }
    return std::span<const double>(values_).subspan(static_cast<std::size_t>(q.first_cell(resolution_)),
                                                    static_cast<std::size_t>(q.cell_count(resolution_)));
  }

  double mean() const { return mean_on(DyadicInterval::unit()); }
  double mean_on(const DyadicInterval& q) const {
    const auto cells = restrict_to(q);
    double s = 0.0;
    for (double v : cells) s += v;
    return s / static_cast<double>(cells.size());
  }
  double sup_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
  }
  bool strictly_positive() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v > 0.0; });
  }

  template <class F>
  StepSignal map(F&& fn) const {
    std::vector<double> out(values_.size());
    std::transform(values_.begin(), values_.end(), out.begin(), fn);
    return StepSignal(resolution_, std::move(out));
  }

  StepSignal abs() const {
    return map([](double v) { return std::abs(v); });
  }
  StepSignal scaled(double c) const {
    return map([c](double v) { return c * v; });
  }

  friend StepSignal operator+(const StepSignal& a, const StepSignal& b) {
    return zip(a, b, [](double x, double y) { return x + y; });
  }
  friend StepSignal operator-(const StepSignal& a, const StepSignal& b) {
    return zip(a, b, [](double x, double y) { return x - y; });
  }
  friend StepSignal operator*(const StepSignal& a, const StepSignal& b) {
    return zip(a, b, [](double x, double y) { return x * y; });
  }

  bool operator==(const StepSignal&) const = default;

 private:
  template <class F>
  static StepSignal zip(const StepSignal& a, const StepSignal& b, F&& fn) {
    if (a.resolution_ != b.resolution_) throw DomainError("resolution mismatch");
    std::vector<double> out(a.size());
    for (std::size_t c = 0; c < out.size(); ++c) out[c] = fn(a.values_[c], b.values_[c]);
    return StepSignal(a.resolution_, std::move(out));
  }

  int resolution_;
  std::vector<double> values_;
};

// Text format: a header line "J=<int>" optionally followed by " kind=<word>",
// then 2^J whitespace-separated decimal values.
struct SignalFile {
  StepSignal signal;
  std::string kind = "signal";
};

inline SignalFile read_signal(std::istream& in, const std::string& origin = "<stream>") {
  std::string header;
  if (!std::getline(in, header)) throw IoError(origin + ": empty input");
  std::istringstream hs(header);
  std::string token;
  std::optional<int> resolution;
  std::string kind = "signal";
  while (hs >> token) {
    if (token.rfind("J=", 0) == 0) {
      try {
        std::size_t used = 0;
        resolution = std::stoi(token.substr(2), &used);
        if (used != token.size() - 2) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw IoError(origin + ": bad header token '" + token + "'");
      }
    } else if (token.rfind("kind=", 0) == 0) {
      kind = token.substr(5);
    } else {
      throw IoError(origin + ": unexpected header token '" + token + "'");
    }
  }
  if (!resolution) throw IoError(origin + ": header must start with J=<int>");
  if (*resolution < 0 || *resolution > kMaxResolution) {
    throw IoError(origin + ": resolution out of range");
  }
  const std::size_t expected = std::size_t{1} << *resolution;
  std::vector<double> values;
  values.reserve(expected);
  std::string word;
  while (in >> word) {
    try {
      std::size_t used = 0;
      const double v = std::stod(word, &used);
      if (used != word.size()) throw std::invalid_argument(word);
      values.push_back(v);
    } catch (const std::exception&) {
      throw IoError(origin + ": not a number: '" + word + "'");
    }
  }
  if (values.size() != expected) {
    throw IoError(origin + ": expected " + std::to_string(expected) + " values for J=" +
                  std::to_string(*resolution) + ", found " + std::to_string(values.size()));
  }
  try {
    return SignalFile{StepSignal(*resolution, std::move(values)), kind};
  } catch (const DomainError& e) {
    throw IoError(origin + ": " + e.what());
  }
}

inline SignalFile read_signal_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path + ": cannot open for reading");
  return read_signal(in, path);
}

// Values are written with 17 significant digits so that reading back is exact.
inline void write_signal(std::ostream& out, const StepSignal& s, const std::string& kind = "") {
  out << "J=" << s.resolution();
  if (!kind.empty()) out << " kind=" << kind;
  out << '\n' << std::setprecision(17);
  for (std::size_t c = 0; c < s.size(); ++c) {
    out << s[c] << ((c + 1) % 8 == 0 || c + 1 == s.size() ? '\n' : ' ');
  }
}

inline void write_signal_file(const std::string& path, const StepSignal& s,
                              const std::string& kind = "") {
  std::ofstream out(path);
  if (!out) throw IoError(path + ": cannot open for writing");
  write_signal(out, s, kind);
  if (!out) throw IoError(path + ": write failed");
}

}  // namespace dyadiclab

#endif  // DYADICLAB_STEP_SIGNAL_HPP_
