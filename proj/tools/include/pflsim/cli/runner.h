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

#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include "pflsim/algorithms/algorithm.h"
#include "pflsim/cli/config.h"
#include "pflsim/data/dataset.h"
#include "pflsim/engine/simulation.h"
#include "pflsim/models/model.h"
#include "pflsim/privacy/config.h"

namespace pflsim::cli {

// Phase of a run a failure belongs to; drives the process exit code.
enum class Phase { kConfig, kData, kRuntime };

int exit_code(Phase phase);  // 2, 3, 4

class PhaseError : public std::runtime_error {
 public:
  PhaseError(Phase phase, const std::string& what) : std::runtime_error(what), phase_(phase) {}
  Phase phase() const { return phase_; }

 private:
  Phase phase_;
};

struct Datasets {
  data::FederatedDataset train{Population::kTrain};
  std::optional<data::FederatedDataset> val;
  data::LabeledData central_eval;  // may be empty
  std::size_t dim = 0;
  int num_classes = 0;
};

Datasets build_datasets(const RunConfig& config);
std::unique_ptr<models::Model> build_model(const RunConfig& config, std::size_t dim, int num_classes);
models::CentralOptimizer build_central_optimizer(const RunConfig& config);
std::unique_ptr<algorithms::FederatedAlgorithm> build_algorithm(const RunConfig& config,
                                                                const models::Model& model,
                                                                const Datasets& datasets);

struct RunOutcome {
  engine::SimulationResult simulation;
  std::optional<privacy::AccountantResult> accountant;
  std::filesystem::path metrics_path;
  std::filesystem::path metadata_path;
  std::filesystem::path checkpoint_path;
};

// Builds everything from the config, runs the simulation and writes the
// metrics CSV, the metadata JSON and the final checkpoint into `out_dir`.
// Failures are rethrown as PhaseError. Progress lines go to `log` if given.
RunOutcome run_experiment(const RunConfig& config, const std::filesystem::path& out_dir,
                          std::ostream* log = nullptr);

}  // namespace pflsim::cli
