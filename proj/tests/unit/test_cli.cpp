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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"
#include "pflsim/cli/bench.h"
#include "pflsim/cli/config.h"
#include "pflsim/cli/runner.h"

namespace pflsim::cli {
namespace {

namespace fs = std::filesystem;

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("pflsim_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string value_of(const RunConfig& c, const std::string& key) {
  for (const auto& [k, v] : c.resolved) {
    if (k == key) return v;
  }
  return "<missing>";
}

std::string problems_of(std::string_view text, std::vector<std::string> overrides = {}) {
  try {
    parse_config_text(text, "exp.cfg", overrides);
  } catch (const ConfigError& e) {
    std::string joined;
    for (const auto& p : e.problems()) joined += (joined.empty() ? "" : "\n") + p;
    return joined;
  }
  return "";
}

TEST(Config, DefaultsAreComplete) {
  const RunConfig c = parse_config_text("", "exp.cfg");
  EXPECT_EQ(c.resolved.size(), config_keys().size());
  EXPECT_EQ(c.engine.iterations, 100);
  EXPECT_EQ(c.privacy.mechanism, privacy::Mechanism::kNone);
  EXPECT_EQ(c.algorithm.weighting, Weighting::kDatapoints);
}

TEST(Config, IidPresetResolves) {
  const RunConfig c = parse_config_text("preset = cifar10-iid-like\n", "exp.cfg");
  EXPECT_EQ(c.engine.iterations, 1500);
  EXPECT_EQ(c.engine.cohort_size, 50);
  EXPECT_EQ(c.local.learning_rate, 0.1);
  EXPECT_EQ(c.local.batch_size, 10);
  EXPECT_EQ(c.data.num_users, 1000);
  EXPECT_EQ(c.data.points_per_user, 50);
  EXPECT_EQ(c.data.partition, PartitionKind::kIid);
  EXPECT_EQ(c.central.learning_rate, 1.0);
  EXPECT_EQ(value_of(c, "preset"), "cifar10-iid-like");
}

TEST(Config, DpPresetResolvesWithUniformWeighting) {
  const RunConfig c = parse_config_text("preset = cifar10-dp-like\n", "exp.cfg");
  EXPECT_EQ(c.privacy.mechanism, privacy::Mechanism::kGaussianCentral);
  EXPECT_EQ(c.privacy.clip_bound, 0.4);
  EXPECT_EQ(c.privacy.noise_cohort_size, 1000);
  EXPECT_EQ(c.privacy.epsilon, 2.0);
  EXPECT_EQ(c.privacy.effective_delta(), 1e-6);
  EXPECT_EQ(c.privacy.cohort_size, 50);
  EXPECT_EQ(c.privacy.total_iterations, 1500);
  EXPECT_EQ(c.algorithm.weighting, Weighting::kUniform);
  EXPECT_EQ(value_of(c, "algorithm.weighting"), "user");
}

TEST(Config, FileOverridesPresetAndSetOverridesFile) {
  const std::vector<std::string> overrides = {"engine.cohort_size=7"};
  const RunConfig c = parse_config_text("preset = smoke\nengine.cohort_size = 20\nengine.iterations = 3\n",
                                        "exp.cfg", overrides);
  EXPECT_EQ(c.engine.cohort_size, 7);
  EXPECT_EQ(c.engine.iterations, 3);
  EXPECT_EQ(c.data.num_users, 50);
}

TEST(Config, UnknownKeySuggestsNearestOnOneLine) {
  const std::string msg = problems_of("# comment\n\nengine.chohort_size = 5\n");
  EXPECT_EQ(msg, "exp.cfg:3: unknown key 'engine.chohort_size' (did you mean 'engine.cohort_size'?)");
  EXPECT_EQ(nearest_key("chohort_size"), "engine.cohort_size");
  EXPECT_EQ(nearest_key("privacy.epsilom"), "privacy.epsilon");
}

TEST(Config, EveryProblemIsReportedWithItsLine) {
  const std::string msg = problems_of("engine.iterations = abc\nthis line is wrong\nlocal.lerning_rate = 1\n"
                                      "engine.iterations = 4\n");
  EXPECT_NE(msg.find("exp.cfg:1"), std::string::npos) << msg;
  EXPECT_NE(msg.find("expected an integer, got 'abc'"), std::string::npos) << msg;
  EXPECT_NE(msg.find("exp.cfg:2"), std::string::npos) << msg;
  EXPECT_NE(msg.find("exp.cfg:3: unknown key 'local.lerning_rate' (did you mean 'local.learning_rate'?)"),
            std::string::npos)
      << msg;
  EXPECT_NE(msg.find("exp.cfg:4"), std::string::npos) << msg;  // duplicate key
  EXPECT_EQ(std::count(msg.begin(), msg.end(), '\n'), 3) << msg;
}

TEST(Config, BadOverrideIsReported) {
  EXPECT_NE(problems_of("", {"engine.seed"}).find("engine.seed"), std::string::npos);
  EXPECT_NE(problems_of("", {"nope=1"}).find("unknown key 'nope'"), std::string::npos);
  EXPECT_NE(problems_of("preset = imagenet\n").find("imagenet"), std::string::npos);
}

TEST(Config, CrossFieldChecks) {
  EXPECT_NE(problems_of("preset = cifar10-dp-like\nalgorithm.weighting = datapoints\n").find("weighting"),
            std::string::npos);
  EXPECT_NE(problems_of("data.num_users = 10\nengine.cohort_size = 11\n").find("cohort_size"), std::string::npos);
  EXPECT_NE(problems_of("data.source = csv\n").find("train_path"), std::string::npos);
  EXPECT_NE(problems_of("privacy.adaptive_clipping = true\n").find("adaptive"), std::string::npos);
  EXPECT_EQ(problems_of("preset = cifar10-dp-like\nalgorithm.weighting = user\n"), "");
}

TEST(Config, ExitCodesByPhase) {
  EXPECT_EQ(exit_code(Phase::kConfig), 2);
  EXPECT_EQ(exit_code(Phase::kData), 3);
  EXPECT_EQ(exit_code(Phase::kRuntime), 4);
}

RunConfig smoke(std::vector<std::string> extra = {}) {
  extra.insert(extra.begin(), "preset=smoke");
  return parse_config_text("", "smoke", extra);
}

TEST(Run, ReplayIsByteIdentical) {
  const fs::path a = fresh_dir("replay_a"), b = fresh_dir("replay_b");
  const RunConfig c = smoke({"engine.num_workers=2"});
  run_experiment(c, a);
  run_experiment(c, b);
  const std::string first = read_file(a / "metrics.csv");
  EXPECT_FALSE(first.empty());
  EXPECT_EQ(first, read_file(b / "metrics.csv"));
  EXPECT_EQ(read_file(a / "checkpoint.csv"), read_file(b / "checkpoint.csv"));
  std::ifstream golden(fs::path(PFLSIM_GOLDEN_DIR) / "metrics_header.csv");
  std::string header;
  std::getline(golden, header);
  EXPECT_EQ(first.substr(0, first.find('\n')), header);
}

TEST(Run, PrivacyDoesNotChangeCohorts) {
  const fs::path a = fresh_dir("cohort_plain"), b = fresh_dir("cohort_dp");
  run_experiment(smoke({"algorithm.weighting=user"}), a);
  run_experiment(smoke({"privacy.mechanism=gaussian", "privacy.noise_cohort_size=10", "privacy.population=50",
                        "privacy.noise_multiplier=1"}),
                 b);
  const auto ma = nlohmann::json::parse(read_file(a / "metadata.json"));
  const auto mb = nlohmann::json::parse(read_file(b / "metadata.json"));
  ASSERT_EQ(ma["iterations"].size(), mb["iterations"].size());
  for (std::size_t t = 0; t < ma["iterations"].size(); ++t) {
    const auto& ca = ma["iterations"][t]["contexts"];
    const auto& cb = mb["iterations"][t]["contexts"];
    ASSERT_EQ(ca.size(), cb.size());
    for (std::size_t k = 0; k < ca.size(); ++k) EXPECT_EQ(ca[k]["cohort"], cb[k]["cohort"]);
  }
  EXPECT_EQ(mb["privacy"]["mechanism"], "gaussian");
  EXPECT_NE(read_file(a / "checkpoint.csv"), read_file(b / "checkpoint.csv"));
}

TEST(Run, MetadataRecordsTheResolvedConfig) {
  const fs::path dir = fresh_dir("metadata");
  const RunConfig c = smoke({"engine.seed=9"});
  const RunOutcome out = run_experiment(c, dir);
  EXPECT_EQ(out.simulation.iterations_run, 5);
  const auto meta = nlohmann::json::parse(read_file(out.metadata_path));
  EXPECT_EQ(meta["config"]["engine.seed"], "9");
  EXPECT_EQ(meta["config"].size(), config_keys().size());
  EXPECT_EQ(meta["iterations_run"], 5);
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(PFLSIM_CLI_BIN) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Cli, ExitCodes) {
  const fs::path dir = fresh_dir("exit");
  const std::string out = " --quiet --out " + dir.string();
  EXPECT_EQ(run_cli("run /dev/null --set preset=smoke" + out), 0);
  EXPECT_EQ(run_cli("run /dev/null --set engine.chohort_size=3" + out), 2);
  EXPECT_EQ(run_cli("run " + (dir / "missing.cfg").string() + out), 2);
  EXPECT_EQ(run_cli("run /dev/null --set preset=smoke --set data.source=csv --set data.train_path=/nonexistent "
                    "--set data.val_path=/nonexistent" + out),
            3);
  EXPECT_EQ(run_cli("run /dev/null --set preset=smoke --set algorithm.name=scaffold --set local.epochs=0" + out),
            4);
  EXPECT_EQ(run_cli("account --epsilon 2 --delta 1e-6 --q 0.001 --steps 100"), 0);
  EXPECT_EQ(run_cli("no-such-command"), 2);
}

TEST(Bench, SingleWorkerHasNoStragglersAndIsReproducible) {
  BenchScheduleSpec spec;
  spec.workers = {1, 4};
  spec.trials = 20;
  spec.seed = 3;
  const auto rows = bench_schedule(spec);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].no_scheduling, 0.0);
  EXPECT_EQ(rows[0].greedy, 0.0);
  EXPECT_EQ(rows[0].greedy_median, 0.0);
  EXPECT_GT(rows[1].no_scheduling, rows[1].greedy_median);
  std::ostringstream a, b;
  write_bench_csv(rows, a);
  write_bench_csv(bench_schedule(spec), b);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().substr(0, a.str().find('\n')), "workers,no_scheduling,greedy,greedy_median");
}

}  // namespace
}  // namespace pflsim::cli
