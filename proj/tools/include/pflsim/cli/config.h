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

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pflsim/algorithms/fedprox.h"
#include "pflsim/core/context.h"
#include "pflsim/core/error.h"
#include "pflsim/data/sampling.h"
#include "pflsim/engine/backend.h"
#include "pflsim/models/central_optimizer.h"
#include "pflsim/privacy/config.h"

namespace pflsim::cli {

enum class DataSource { kSynthetic, kCsv };
enum class PartitionKind { kIid, kDirichlet };
enum class ModelKind { kLogistic, kMlp, kQuadratic };
enum class AlgorithmKind { kFedAvg, kFedProx, kAdaFedProx, kScaffold };
enum class OptimizerKind { kSgd, kAdam };

struct DataSpec {
  DataSource source = DataSource::kSynthetic;
  std::string train_path;
  std::string val_path;
  std::int64_t num_users = 1000;
  std::int64_t points_per_user = 50;
  PartitionKind partition = PartitionKind::kIid;
  double dirichlet_alpha = 0.1;
  std::int64_t dim = 32;
  std::int64_t num_classes = 10;
  double margin = 6.0;
  std::int64_t val_users = 100;
  std::int64_t central_eval_points = 2000;
};

struct ModelSpec {
  ModelKind kind = ModelKind::kLogistic;
  std::int64_t hidden = 32;
};

struct AlgorithmSpec {
  AlgorithmKind kind = AlgorithmKind::kFedAvg;
  double mu = 0.01;
  algorithms::AdaptiveMuRule mu_rule;
  Weighting weighting = Weighting::kDatapoints;
};

struct LocalSpec {
  double learning_rate = 0.1;
  std::int64_t epochs = 1;
  std::int64_t batch_size = 10;
};

struct CentralSpec {
  OptimizerKind optimizer = OptimizerKind::kSgd;
  double learning_rate = 1.0;
  std::int64_t lr_warmup = 0;
  models::AdamConfig adam;
};

struct EngineSpec {
  std::int64_t iterations = 100;
  std::int64_t cohort_size = 50;
  std::int64_t eval_frequency = 10;
  std::int64_t eval_cohort_size = 0;  // 0: every validation user
  std::int64_t eval_batch_size = 10000;
  std::int64_t num_workers = 1;
  std::uint64_t seed = 0;
  engine::SchedulingPolicy scheduling = engine::SchedulingPolicy::kGreedy;
  engine::BaseWeightPolicy base = engine::BaseWeightPolicy::median();
  data::CohortMode::Kind sampling = data::CohortMode::Kind::kFixedSize;
};

struct OutputSpec {
  std::string metrics = "metrics.csv";
  std::string metadata = "metadata.json";
  std::string checkpoint = "checkpoint.csv";
};

// Fully typed and validated experiment description.
struct RunConfig {
  std::string preset;
  DataSpec data;
  ModelSpec model;
  AlgorithmSpec algorithm;
  LocalSpec local;
  CentralSpec central;
  EngineSpec engine;
  privacy::PrivacyConfig privacy;
  OutputSpec output;
  // Every key with its final value, in key order. This is the complete
  // record of the experiment.
  std::vector<std::pair<std::string, std::string>> resolved;
};

// Thrown for any configuration problem. what() holds one line per problem.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

struct KeyInfo {
  std::string_view key;
  std::string_view default_value;
  std::string_view help;
};

const std::vector<KeyInfo>& config_keys();
std::vector<std::string> preset_names();
// Key/value pairs a preset sets on top of the defaults.
const std::vector<std::pair<std::string_view, std::string_view>>& preset_values(std::string_view name);

// Closest valid key by edit distance, also matching on the last dotted
// component so that a bare `chohort_size` finds `engine.cohort_size`.
std::string nearest_key(std::string_view key);

// `key = value` lines, `#` comments, blank lines ignored. Resolution order:
// defaults, preset, file, then `overrides` (each `key=value`). All problems
// are collected and thrown together as one ConfigError.
RunConfig parse_config_text(std::string_view text, std::string_view origin,
                            std::span<const std::string> overrides = {});
RunConfig parse_config(const std::filesystem::path& path,
                       std::span<const std::string> overrides = {});

}  // namespace pflsim::cli
