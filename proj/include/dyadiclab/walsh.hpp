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

#ifndef DYADICLAB_WALSH_HPP_
#define DYADICLAB_WALSH_HPP_

// Walsh system in the Paley ordering: W_k(x) = (-1)^{sum_j k_j x_j}, where
// k_j is bit j of k and x_j is the (j+1)-th binary digit of x. On a signal
// of resolution J the characters W_0 .. W_{2^J - 1} are constant on cells and
// form an orthonormal basis.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "dyadiclab/errors.hpp"
#include "dyadiclab/step_signal.hpp"

namespace dyadiclab {

inline std::uint64_t bit_reverse(std::uint64_t c, int bits) {
  std::uint64_t r = 0;
  for (int b = 0; b < bits; ++b) {
    r = (r << 1) | (c & 1u);
    c >>= 1;
  }
  return r;
}

// Digit j of the left endpoint of cell c is bit (J-1-j) of c, so the Paley
// exponent sum_j k_j x_j is the parity of k & reverse(c).
inline int walsh_sign(std::uint64_t k, std::uint64_t cell, int resolution) {
  return (std::popcount(k & bit_reverse(cell, resolution)) & 1) ? -1 : 1;
}

namespace detail {

inline std::vector<std::uint64_t> reversal_table(int resolution) {
  std::vector<std::uint64_t> rev(std::size_t{1} << resolution);
  for (std::size_t c = 0; c < rev.size(); ++c) rev[c] = bit_reverse(c, resolution);
  return rev;
}

// Unnormalized Walsh-Hadamard butterfly in natural (Hadamard) order.
inline void hadamard_in_place(std::vector<double>& v) {
  for (std::size_t h = 1; h < v.size(); h *= 2) {
    for (std::size_t i = 0; i < v.size(); i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double x = v[j];
        const double y = v[j + h];
        v[j] = x + y;
        v[j + h] = x - y;
      }
    }
  }
}

}  // namespace detail

/// The Walsh character W_k sampled at resolution J.
inline StepSignal walsh_character(std::uint64_t k, int resolution) {
  if (resolution < 0 || resolution > kMaxResolution) throw DomainError("resolution out of range");
  if (k >= (std::uint64_t{1} << resolution)) {
    throw DomainError("W_k with k >= 2^J is not constant on cells");
  }
  std::vector<double> v(std::size_t{1} << resolution);
  for (std::size_t c = 0; c < v.size(); ++c) v[c] = walsh_sign(k, c, resolution);
  return StepSignal(resolution, std::move(v));
}

/// Walsh-Fourier coefficients <f, W_k>, k < 2^J, in Paley order.
struct WalshSpectrum {
  int resolution = 0;
  std::vector<double> coefficients;

  double energy() const {
    double s = 0.0;
    for (double c : coefficients) s += c * c;
    return s;
  }
};

/// O(J 2^J) transform: coefficient[k] = sum_c f_c W_k(c) 2^-J.
inline WalshSpectrum fwht(const StepSignal& f) {
  const int J = f.resolution();
  const auto rev = detail::reversal_table(J);
  std::vector<double> v(f.size());
  for (std::size_t c = 0; c < v.size(); ++c) v[rev[c]] = f[c];
  detail::hadamard_in_place(v);
  const double scale = f.cell_measure();
  for (double& x : v) x *= scale;
  return WalshSpectrum{J, std::move(v)};
}

inline StepSignal inverse_fwht(const WalshSpectrum& spectrum) {
  const int J = spectrum.resolution;
  if (spectrum.coefficients.size() != (std::size_t{1} << J)) {
    throw DomainError("spectrum length does not match its resolution");
  }
  std::vector<double> v = spectrum.coefficients;
  detail::hadamard_in_place(v);
  const auto rev = detail::reversal_table(J);
  std::vector<double> out(v.size());
  for (std::size_t c = 0; c < v.size(); ++c) out[c] = v[rev[c]];
  return StepSignal(J, std::move(out));
}

/// W_n f = sum_{k <= n} <f, W_k> W_k. For n >= 2^J - 1 this is f itself.
inline StepSignal partial_sum(const StepSignal& f, std::uint64_t n) {
  auto spectrum = fwht(f);
  const std::uint64_t size = spectrum.coefficients.size();
  if (n + 1 < size) {
    std::fill(spectrum.coefficients.begin() + static_cast<std::ptrdiff_t>(n + 1),
              spectrum.coefficients.end(), 0.0);
  }
  return inverse_fwht(spectrum);
}

/// Walsh-Carleson maximal function Wf(x) = max_{n < 2^J} |W_n f(x)|, by the
/// running update S_n = S_{n-1} + <f, W_n> W_n. O(4^J).
inline StepSignal carleson_max(const StepSignal& f) {
  const int J = f.resolution();
  const auto spectrum = fwht(f);
  const auto rev = detail::reversal_table(J);
  const std::size_t size = f.size();
  std::vector<double> running(size, 0.0);
  std::vector<double> best(size, 0.0);
  for (std::size_t n = 0; n < size; ++n) {
    const double c = spectrum.coefficients[n];
    if (c != 0.0) {
      for (std::size_t x = 0; x < size; ++x) {
        running[x] += (std::popcount(n & rev[x]) & 1) ? -c : c;
      }
    }
    for (std::size_t x = 0; x < size; ++x) best[x] = std::max(best[x], std::abs(running[x]));
  }
  return StepSignal(J, std::move(best));
}

/// Set bits of n >= 1 in decreasing order, n = sum_j 2^{k_j}, together with
/// the offsets r_0 = 0, r_j = 2^{-k_j} sum_{l<j} 2^{k_l} and the frequency
/// intervals [r_j 2^{k_j}, (r_j + 1) 2^{k_j}) for all but the last bit.
struct BitDecomposition {
  struct FrequencyInterval {
    std::uint64_t begin = 0;
    std::uint64_t end = 0;  // exclusive
    bool operator==(const FrequencyInterval&) const = default;
  };

  std::uint64_t n = 0;
  std::vector<int> k_list;
  std::vector<std::uint64_t> r_list;
  std::vector<FrequencyInterval> freq_intervals;
};

inline BitDecomposition bit_decomposition(std::uint64_t n) {
  if (n == 0) throw DomainError("bit_decomposition requires n >= 1");
  BitDecomposition d;
  d.n = n;
  for (int b = 63; b >= 0; --b) {
    if ((n >> b) & 1u) d.k_list.push_back(b);
  }
  std::uint64_t prefix = 0;  // sum_{l<j} 2^{k_l}
  for (std::size_t j = 0; j < d.k_list.size(); ++j) {
    const int k = d.k_list[j];
    d.r_list.push_back(prefix >> k);
    prefix += std::uint64_t{1} << k;
  }
  for (std::size_t j = 0; j + 1 < d.k_list.size(); ++j) {
    const std::uint64_t len = std::uint64_t{1} << d.k_list[j];
    d.freq_intervals.push_back({d.r_list[j] * len, (d.r_list[j] + 1) * len});
  }
  return d;
}

}  // namespace dyadiclab

#endif  // DYADICLAB_WALSH_HPP_
