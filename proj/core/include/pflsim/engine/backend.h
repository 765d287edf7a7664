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

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "pflsim/algorithms/algorithm.h"
#include "pflsim/data/dataset.h"
#include "pflsim/data/sampling.h"
#include "pflsim/engine/aggregator.h"
#include "pflsim/engine/postprocessor.h"
#include "pflsim/engine/scheduling.h"

namespace pflsim::engine {

enum class SchedulingPolicy { kNone, kGreedy };

struct BackendConfig {
  std::size_t num_workers = 1;
  SchedulingPolicy scheduling = SchedulingPolicy::kGreedy;
  BaseWeightPolicy base = BaseWeightPolicy::median();
  data::CohortMode cohort_mode = data::CohortMode::fixed_size();
  std::uint64_t seed = 0;  // cohort sampling stream
};

struct ContextRun {
  algorithms::ContextResult result;
  std::vector<double> worker_loads;    // effective scheduled weight
  std::vector<double> worker_seconds;  // measured wall-clock
  std::int64_t num_contributors = 0;
};

// In-process simulation backend. Each context: sample a cohort, schedule it
// over the workers, let every worker run its queue (simulate, local
// postprocessors, accumulate), reduce across workers, then run the server
// postprocessors in reversed order. Workers share nothing mutable.
class SimulatedBackend {
 public:
  SimulatedBackend(const data::FederatedDataset& train, const data::FederatedDataset* val,
                   PostprocessorList postprocessors, std::shared_ptr<const Aggregator> aggregator,
                   BackendConfig config);

  const BackendConfig& config() const { return config_; }
  const PostprocessorList& postprocessors() const { return postprocessors_; }

  std::vector<std::string> sample(const CentralContext& context) const;

  ContextRun run_context(const algorithms::FederatedAlgorithm& algorithm,
                         const models::ModelParams& params, const CentralContext& context);

  std::vector<ContextRun> run_central_iteration(std::span<const CentralContext> contexts,
                                                const models::ModelParams& params,
                                                const algorithms::FederatedAlgorithm& algorithm);

 private:
  const data::FederatedDataset& dataset_for(Population population) const;

  const data::FederatedDataset& train_;
  const data::FederatedDataset* val_;
  PostprocessorList postprocessors_;
  std::shared_ptr<const Aggregator> aggregator_;
  BackendConfig config_;
};

}  // namespace pflsim::engine
