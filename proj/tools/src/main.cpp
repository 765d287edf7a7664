// Copyright 2026 The pflsim Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pflsim/cli/bench.h"
#include "pflsim/cli/config.h"
#include "pflsim/cli/runner.h"
#include "pflsim/core/error.h"
#include "pflsim/privacy/accountant.h"

namespace {

using pflsim::cli::Phase;

int run_command(const std::string& config_path, std::vector<std::string> overrides, int workers,
                long long seed, const std::string& out_dir, bool quiet) {
  if (workers > 0) overrides.push_back("engine.num_workers=" + std::to_string(workers));
  if (seed >= 0) overrides.push_back("engine.seed=" + std::to_string(seed));
  pflsim::cli::RunConfig config;
  try {
    config = pflsim::cli::parse_config(config_path, overrides);
  } catch (const pflsim::Error& e) {
    std::cerr << "config error:\n" << e.message() << '\n';
    return pflsim::cli::exit_code(Phase::kConfig);
  }
  try {
    const auto outcome = pflsim::cli::run_experiment(config, out_dir, quiet ? nullptr : &std::cerr);
    if (!quiet) {
      std::cerr << "wrote " << outcome.metrics_path.string() << ", " << outcome.metadata_path.string() << ", "
                << outcome.checkpoint_path.string() << '\n';
    }
    return 0;
  } catch (const pflsim::cli::PhaseError& e) {
    const char* label = e.phase() == Phase::kData ? "data error" : e.phase() == Phase::kConfig ? "config error"
                                                                                                 : "runtime error";
    std::cerr << label << ": " << e.what() << '\n';
    return pflsim::cli::exit_code(e.phase());
  }
}

int bench_command(const pflsim::cli::BenchScheduleSpec& spec, const std::string& out_path) {
  try {
    const auto rows = pflsim::cli::bench_schedule(spec);
    if (out_path.empty()) {
      pflsim::cli::write_bench_csv(rows, std::cout);
    } else {
      std::ofstream out(out_path);
      if (!out) {
        std::cerr << "data error: cannot write " << out_path << '\n';
        return pflsim::cli::exit_code(Phase::kData);
      }
      pflsim::cli::write_bench_csv(rows, out);
    }
    return 0;
  } catch (const pflsim::Error& e) {
    std::cerr << "config error: " << e.message() << '\n';
    return pflsim::cli::exit_code(Phase::kConfig);
  }
}

int account_command(double epsilon, double delta, double q, long long steps) {
  try {
    const auto r = pflsim::privacy::calibrate_sigma(epsilon, delta, q, steps);
    std::cout << std::setprecision(10) << r.sigma << '\n';
    std::cerr << "achieved epsilon " << std::setprecision(10) << r.epsilon << " at order " << r.alpha << '\n';
    return 0;
  } catch (const pflsim::Error& e) {
    std::cerr << "error: " << e.message() << '\n';
    return e.code() == pflsim::ErrorCode::kUnachievable ? pflsim::cli::exit_code(Phase::kRuntime)
                                                        : pflsim::cli::exit_code(Phase::kConfig);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pflsim: private federated learning simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  int workers = 0;
  long long seed = -1;
  std::string out_dir = "pflsim-out";
  bool quiet = false;
  CLI::App* run = app.add_subcommand("run", "run a simulation from a config file");
  run->add_option("config", config_path, "config file (key = value lines)")->required();
  run->add_option("--set", overrides, "override a config key, key=value (repeatable)");
  run->add_option("--workers", workers, "number of parallel workers (engine.num_workers)");
  run->add_option("--seed", seed, "global seed (engine.seed)");
  run->add_option("--out", out_dir, "output directory")->capture_default_str();
  run->add_flag("--quiet", quiet, "no progress output");

  pflsim::cli::BenchScheduleSpec spec;
  std::string bench_out;
  CLI::App* bench = app.add_subcommand("bench-schedule", "compare worker scheduling policies");
  bench->add_option("--workers", spec.workers, "worker counts")->delimiter(',')->capture_default_str();
  bench->add_option("--cohort", spec.cohort_size, "users per cohort")->capture_default_str();
  bench->add_option("--mu", spec.lognormal_mu, "lognormal mu of user weights")->capture_default_str();
  bench->add_option("--sigma", spec.lognormal_sigma, "lognormal sigma of user weights")->capture_default_str();
  bench->add_option("--overhead", spec.overhead, "per-user fixed cost (negative: exp(mu))")->capture_default_str();
  bench->add_option("--trials", spec.trials, "cohorts per worker count")->capture_default_str();
  bench->add_option("--seed", spec.seed, "seed")->capture_default_str();
  bench->add_option("--out", bench_out, "CSV output file (default stdout)");

  double epsilon = 2.0;
  double delta = 1e-6;
  double q = 0.001;
  long long steps = 1;
  CLI::App* account = app.add_subcommand("account", "calibrate the Gaussian noise multiplier; prints sigma");
  account->add_option("--epsilon", epsilon, "target epsilon")->required();
  account->add_option("--delta", delta, "target delta")->required();
  account->add_option("--q", q, "sampling rate")->required();
  account->add_option("--steps", steps, "number of compositions")->required();

  CLI::App* presets = app.add_subcommand("presets", "list presets and their values");
  CLI::App* keys = app.add_subcommand("keys", "list config keys with defaults");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : pflsim::cli::exit_code(Phase::kConfig);
  }

  if (*run) return run_command(config_path, overrides, workers, seed, out_dir, quiet);
  if (*bench) return bench_command(spec, bench_out);
  if (*account) return account_command(epsilon, delta, q, steps);
  if (*presets) {
    for (const auto& name : pflsim::cli::preset_names()) {
      std::cout << name << '\n';
      for (const auto& [k, v] : pflsim::cli::preset_values(name)) std::cout << "  " << k << " = " << v << '\n';
    }
    return 0;
  }
  if (*keys) {
    for (const auto& k : pflsim::cli::config_keys()) {
      std::cout << k.key << " = " << k.default_value << "    # " << k.help << '\n';
    }
    return 0;
  }
  return 0;
}
