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
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "pflsim/algorithms/algorithm.h"
#include "pflsim/engine/backend.h"
#include "pflsim/engine/callbacks.h"

namespace pflsim::engine {

struct ContextSummary {
  Population population = Population::kTrain;
  std::vector<std::string> cohort;
  std::vector<double> worker_loads;
  std::vector<double> worker_seconds;
  double max_straggler_seconds = 0.0;
};

struct IterationRecord {
  std::int64_t iteration = 0;
  IterationMetrics metrics;
  std::vector<ContextSummary> contexts;
  double wall_seconds = 0.0;
};

struct SimulationResult {
  models::ModelParams final_params;
  std::vector<IterationRecord> history;
  std::int64_t iterations_run = 0;
};

using CallbackList = std::vector<std::shared_ptr<Callback>>;

// The central training loop: contexts -> per-context cohort aggregation ->
// central update -> callbacks, until the algorithm returns no contexts or a
// callback asks to stop. Errors are rethrown with the iteration index.
SimulationResult run_simulation(models::ModelParams initial, algorithms::FederatedAlgorithm& algorithm,
                                SimulatedBackend& backend,
                                std::span<const std::shared_ptr<Callback>> callbacks = {});

}  // namespace pflsim::engine
