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

// Acceptance run: one PASS/FAIL line per hard criterion. Exit status is
// nonzero when any criterion fails. An optional argument names the scaling
// CSV output (default acceptance_scaling.csv in the working directory).

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dyadiclab.hpp"

namespace dyadiclab {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(const std::string& name, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  failures += !o.pass;
  std::printf("%s %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string num(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

std::string fuzz_detail(const FuzzReport& r) {
  return std::to_string(r.passed) + "/" + std::to_string(r.trials) + " trials pass, worst margin " +
         num(r.worst_margin);
}

FuzzReport fuzz(const std::string& suite, std::uint64_t trials, std::uint64_t seed = 20260101) {
  FuzzOptions opt;
  opt.seed = seed;
  opt.trials = trials;
  return run_fuzz(suite, opt);
}

// Paley character from the binary digits of the cell midpoint.
double walsh_oracle(std::uint64_t k, std::uint64_t cell, int J) {
  int parity = 0;
  for (int j = 0; j < J; ++j) parity ^= static_cast<int>(((k >> j) & 1u) & ((cell >> (J - 1 - j)) & 1u));
  return parity ? -1.0 : 1.0;
}

// sup_{t >= lower} Phi(t) / t^e by a dense log scan refined with Brent.
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
  if (best >= kSteps - 1) return std::numeric_limits<double>::infinity();
  const double lo = a + (b - a) * std::max(0, best - 1) / kSteps;
  const double hi = a + (b - a) * std::min(kSteps, best + 1) / kSteps;
  const auto r = boost::math::tools::brent_find_minima([&](double u) { return -ratio(u); }, lo, hi, 60);
  return std::max(best_val, -r.second);
}

Outcome modulus_identity() {
  const auto r = fuzz("modulus-identity", 700);
  return {r.ok(), fuzz_detail(r) + ", J=4..10 x 100 signals, max deviation " + num(*r.metric("max_deviation"))};
}

Outcome bit_algebra() {
  const auto r = fuzz("bit-algebra", (std::uint64_t{1} << 20) - 1);
  return {r.ok(), fuzz_detail(r) + ", every n in [1, 2^20)"};
}

Outcome fwht_checks() {
  double worst_direct = 0.0, worst_round = 0.0, worst_parseval = 0.0;
  for (int t = 0; t < 60; ++t) {
    auto rng = trial_rng(20260101, 100, t);
    const int J = 1 + t % 14;
    const auto f = gaussian_signal(J, rng);
    const auto s = fwht(f);
    const auto back = inverse_fwht(s);
    double energy = 0.0, err = 0.0;
    for (std::size_t c = 0; c < f.size(); ++c) {
      energy += f[c] * f[c] * f.cell_measure();
      err = std::max(err, std::abs(back[c] - f[c]));
    }
    worst_round = std::max(worst_round, err / f.sup_abs());
    worst_parseval = std::max(worst_parseval, std::abs(s.energy() - energy) / energy);
    if (J <= 8) {
      for (std::uint64_t k = 0; k < f.size(); ++k) {
        double ip = 0.0;
        for (std::uint64_t c = 0; c < f.size(); ++c) ip += f[c] * walsh_oracle(k, c, J);
        ip *= f.cell_measure();
        worst_direct = std::max(worst_direct, std::abs(ip - s.coefficients[k]));
      }
    }
  }
  const bool pass = worst_direct <= 1e-10 && worst_round <= 1e-12 && worst_parseval <= 1e-10;
  return {pass, "direct inner products " + num(worst_direct) + ", round trip " + num(worst_round) +
                    ", Parseval " + num(worst_parseval)};
}

Outcome sparse() {
  const auto r = fuzz("sparse", 10000);
  const double s = *r.metric("min_sparseness");
  const double c = *r.metric("max_domination_constant");
  const double frac = *r.metric("fraction_constant_le_2");
  return {r.ok() && s >= 0.5 && c <= 4.0,
          fuzz_detail(r) + ", min sparseness " + num(s) + ", max domination constant " + num(c) +
              ", fraction with constant <= 2: " + num(frac)};
}

Outcome carleson_sparse() {
  const std::vector<double> rs{9.0 / 8.0, 1.5, 2.0};
  const auto low = carleson_sparse_ratios(8, rs, 200, 20260101);
  const auto high = carleson_sparse_ratios(12, rs, 200, 20260101);
  bool pass = true;
  std::string detail;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    pass = pass && high[i].value <= 1.25 * low[i].value;
    detail += (i ? ", " : "") + std::string("r=") + num(rs[i]) + " R(8)=" + num(low[i].value) +
              " R(12)=" + num(high[i].value);
  }
  return {pass, detail};
}

Outcome prop42() {
  const auto r = fuzz("prop42", 1000);
  return {r.ok(), fuzz_detail(r)};
}

Outcome prop31i() {
  const auto r = fuzz("prop31i", 1000);
  return {r.ok(), fuzz_detail(r)};
}

Outcome orlicz() {
  const auto r = fuzz("orlicz", 1000);
  double worst = 0.0;
  bool agree = true;
  for (const auto& phi : builtin_young_functions()) {
    for (double p : {1.5, 2.0, 3.0}) {
      const double pairs[2][2] = {{gamma_phi(phi, p), sup_oracle(phi, p / (p - 1.0), 1.0)},
                                  {xi_phi(phi, p), sup_oracle(phi, p, phi.inverse(0.5))}};
      for (const auto& [got, ref] : pairs) {
        if (std::isinf(got) || std::isinf(ref)) {
          agree = agree && std::isinf(got) && std::isinf(ref);
          continue;
        }
        worst = std::max(worst, std::abs(got - ref) / ref);
      }
    }
  }
  const double gap = *r.metric("max_defining_equation_gap");
  return {r.ok() && agree && worst <= 1e-8 && gap <= 1e-8,
          fuzz_detail(r) + ", defining equation gap " + num(gap) + ", gamma/xi vs optimizer " + num(worst) +
              (agree ? "" : ", divergence flags disagree")};
}

Outcome rearrangement() {
  const auto r = fuzz("rearrangement", 10000);
  const double lambda = *r.metric("largest_lambda");
  return {lambda > 0.0, "largest passing lambda " + num(lambda) + " over " + std::to_string(r.trials) + " trials"};
}

Outcome scaling(const std::string& out) {
  auto config = default_config("scaling");
  config.threads = 0;
  const auto records = run_experiment(config);
  write_csv_file(out, records);
  config.threads = 3;
  std::ostringstream a, b;
  write_csv(a, records);
  write_csv(b, run_experiment(config));
  const bool deterministic = a.str() == b.str();
  bool pass = deterministic;
  std::string detail = std::to_string(records.size()) + " records to " + out +
                       (deterministic ? ", byte-identical rerun" : ", RERUN DIFFERS");
  for (const auto& g : experiment_gates(config, records)) {
    pass = pass && g.pass();
    detail += ", " + g.experiment + " C(12)=" + num(g.high) + " vs 1.25*C(8)=" + num(g.factor * g.low);
  }
  return {pass, detail};
}

}  // namespace
}  // namespace dyadiclab

int main(int argc, char** argv) {
  using namespace dyadiclab;
  const std::string csv = argc > 1 ? argv[1] : "acceptance_scaling.csv";
  criterion("modulus-identity", modulus_identity);
  criterion("bit-algebra", bit_algebra);
  criterion("fwht", fwht_checks);
  criterion("sparse", sparse);
  criterion("carleson-sparse-stability", carleson_sparse);
  criterion("prop42", prop42);
  criterion("prop31i", prop31i);
  criterion("orlicz", orlicz);
  criterion("rearrangement-ladder", rearrangement);
  criterion("scaling", [&] { return scaling(csv); });
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
