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

// Command-line front end: transforms, weight constants, sparse families,
// experiments and fuzz suites.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "dyadiclab.hpp"
#include "json.hpp"

namespace {

using namespace dyadiclab;
using nlohmann::json;

constexpr int kExitGateFailed = 1;
constexpr int kExitUsage = 2;

StepSignal read_plain_signal(const std::string& path) {
  auto file = read_signal_file(path);
  if (file.kind != "signal") throw IoError(path + ": expected a signal, found kind=" + file.kind);
  return std::move(file.signal);
}

double parse_power_weight(const std::string& spec) {
  const std::string prefix = "power:";
  if (spec.rfind(prefix, 0) != 0) throw ConfigError("weight must be power:<a>, got '" + spec + "'");
  return detail::parse_number(spec.substr(prefix.size()));
}

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json to_json(const FuzzReport& r) {
  json metrics = json::object();
  for (const auto& [k, v] : r.metrics) metrics[k] = number_or_null(v);
  return {{"suite", r.suite},
          {"seed", r.seed},
          {"trials", r.trials},
          {"passed", r.passed},
          {"failed", r.failed},
          {"worst_margin", number_or_null(r.worst_margin)},
          {"hard_gate_failed", r.hard_gate_failed},
          {"metrics", metrics},
          {"witnesses", r.witnesses}};
}

int run_fwht(const std::string& in, const std::string& out) {
  const auto spectrum = fwht(read_plain_signal(in));
  const StepSignal coeffs(spectrum.resolution, spectrum.coefficients);
  if (out.empty()) {
    write_signal(std::cout, coeffs, "spectrum");
  } else {
    write_signal_file(out, coeffs, "spectrum");
  }
  return 0;
}

int run_carleson(const std::string& in, const std::string& out) {
  write_signal_file(out, carleson_max(read_plain_signal(in)));
  return 0;
}

int run_apconst(const std::string& weight, int depth, double p, const std::string& mode_name, bool as_json) {
  const double a = parse_power_weight(weight);
  if (depth < 0 || depth > 14) throw ConfigError("--depth must lie in [0, 14]");
  if (!(p > 1.0)) throw ConfigError("--p must be > 1");
  const auto mode = parse_interval_mode(mode_name);
  const auto profile = power_weight(a, depth);
  const double ap = profile.ap(p, mode);
  if (as_json) {
    const json j{{"a", a},
                 {"J", depth},
                 {"p", p},
                 {"ap", ap},
                 {"a1", profile.a1(mode)},
                 {"ainfty", profile.ainfty()}};
    std::cout << j.dump() << '\n';
  } else {
    std::printf("%.17g\n", ap);
  }
  return 0;
}

int run_sparse(const std::string& in, double lambda, const std::string& family_path) {
  const auto f = read_plain_signal(in);
  const auto family = build_sparse(f, DyadicInterval::unit(), lambda);
  std::ofstream out(family_path);
  if (!out) throw IoError(family_path + ": cannot open for writing");
  write_family(out, family);
  if (!out) throw IoError(family_path + ": write failed");
  std::printf("nodes %zu sparseness %.17g domination %.17g\n", family.nodes.size(), verify_sparseness(family),
              domination_check(f, family, lambda));
  return 0;
}

int run_experiment_cmd(const std::string& name, const std::string& config_path, const std::string& out_path,
                       std::optional<unsigned> threads) {
  auto config = default_config(name);
  if (!config_path.empty()) config = read_config_file(config_path, config);
  config.name = name;
  if (threads) config.threads = *threads;
  if (!out_path.empty()) config.output = out_path;
  if (config.output.empty()) throw ConfigError("no output path: pass --out or set output in the config");
  config.validate();
  const auto records = run_experiment(config);
  write_csv_file(config.output, records);
  std::printf("wrote %zu records to %s\n", records.size(), config.output.c_str());
  bool ok = true;
  for (const auto& g : experiment_gates(config, records)) {
    std::printf("gate %s%s: C(J=%d) = %.6g, C(J=%d) = %.6g, limit %.6g x -> %s\n", g.experiment.c_str(),
                g.p ? (" p=" + format_double(*g.p)).c_str() : "", g.high_J, g.high, g.low_J, g.low,
                g.factor, g.pass() ? "PASS" : "FAIL");
    ok = ok && g.pass();
  }
  return ok ? 0 : kExitGateFailed;
}

int run_fuzz_cmd(const std::string& suite, std::uint64_t seed, std::uint64_t trials, std::optional<int> depth,
                 std::optional<unsigned> threads, bool as_json) {
  FuzzOptions opt;
  opt.seed = seed;
  opt.trials = trials;
  opt.resolution = depth;
  if (threads) opt.threads = *threads;
  const auto report = run_fuzz(suite, opt);
  if (as_json) {
    std::cout << to_json(report).dump(2) << '\n';
  } else {
    print_report(std::cout, report);
  }
  return report.ok() ? 0 : kExitGateFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dyadiclab: Walsh analysis, sparse domination and weight experiments"};
  app.require_subcommand(1);

  std::string in, out;
  auto* fwht_cmd = app.add_subcommand("fwht", "Walsh spectrum of a signal file (Paley order)");
  fwht_cmd->add_option("--in", in, "signal file")->required();
  fwht_cmd->add_option("--out", out, "spectrum file (default: stdout)");

  auto* carleson_cmd = app.add_subcommand("carleson", "Walsh-Carleson maximal function of a signal");
  carleson_cmd->add_option("--in", in, "signal file")->required();
  carleson_cmd->add_option("--out", out, "output signal file")->required();

  std::string weight, mode = "dyadic";
  int depth = 0;
  double p = 2.0;
  bool as_json = false;
  auto* ap_cmd = app.add_subcommand("apconst", "A_p constant of a power weight");
  ap_cmd->add_option("--weight", weight, "power:<a>")->required();
  ap_cmd->add_option("--depth", depth, "resolution J")->required();
  ap_cmd->add_option("--p", p, "exponent p > 1")->required();
  ap_cmd->add_option("--mode", mode, "dyadic or grid")->check(CLI::IsMember({"dyadic", "grid", "grid_aligned"}));
  ap_cmd->add_flag("--json", as_json, "emit {a, J, p, ap, a1, ainfty}");

  double lambda = 0.125;
  std::string family_path;
  auto* sparse_cmd = app.add_subcommand("sparse", "sparse family of a signal on [0,1)");
  sparse_cmd->add_option("--in", in, "signal file")->required();
  sparse_cmd->add_option("--lambda", lambda, "oscillation parameter in (0, 1/4]");
  sparse_cmd->add_option("--emit-family", family_path, "family output file")->required();

  std::string name, config_path;
  std::optional<unsigned> threads;
  auto* exp_cmd = app.add_subcommand("experiment", "experiment runner");
  exp_cmd->require_subcommand(1);
  auto* run_cmd = exp_cmd->add_subcommand("run", "run a named experiment and write CSV");
  run_cmd->add_option("name", name, "scaling, sparse-stability or weak-type")->required();
  run_cmd->add_option("--config", config_path, "key = value config file");
  run_cmd->add_option("--out", out, "CSV output path");
  run_cmd->add_option("--threads", threads, "worker threads (0 = all cores)");

  std::string suite;
  std::uint64_t seed = 1, trials = 100;
  std::optional<int> fuzz_depth;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "seeded invariant suite");
  fuzz_cmd->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(fuzz_suites()));
  fuzz_cmd->add_option("--seed", seed, "master seed");
  fuzz_cmd->add_option("--trials", trials, "number of trials");
  fuzz_cmd->add_option("--depth", fuzz_depth, "fix the resolution J");
  fuzz_cmd->add_option("--threads", threads, "worker threads (0 = all cores)");
  fuzz_cmd->add_flag("--json", as_json, "emit the report as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*fwht_cmd) return run_fwht(in, out);
    if (*carleson_cmd) return run_carleson(in, out);
    if (*ap_cmd) return run_apconst(weight, depth, p, mode, as_json);
    if (*sparse_cmd) return run_sparse(in, lambda, family_path);
    if (*run_cmd) return run_experiment_cmd(name, config_path, out, threads);
    if (*fuzz_cmd) return run_fuzz_cmd(suite, seed, trials, fuzz_depth, threads, as_json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
