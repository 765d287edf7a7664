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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pflsim/core/context.h"
#include "pflsim/core/metrics.h"
#include "pflsim/core/statistics.h"
#include "pflsim/data/dataset.h"
#include "pflsim/models/model.h"

namespace pflsim::algorithms {

// Non-private side information a user hands to local postprocessors.
using UserAux = std::map<std::string, double>;

struct UserResult {
  std::optional<Statistics> statistics;  // absent for evaluation contexts
  UserAux aux;
  Metrics metrics;
  // Per-user algorithm state to persist (e.g. a SCAFFOLD control variate).
  // Committed only in process_aggregated_statistics_all_contexts.
  std::optional<NamedVectors> user_state;
};

// Everything the backend gathered for one context.
struct ContextResult {
  CentralContext context;
  std::vector<std::string> cohort;
  std::optional<Statistics> aggregate;
  Metrics metrics;
  std::map<std::string, NamedVectors> user_states;
};

class FederatedAlgorithm {
 public:
  virtual ~FederatedAlgorithm() = default;

  virtual std::string name() const = 0;

  // Contexts for iteration t. An empty result ends training. May adjust the
  // model in preparation for the iteration.
  virtual std::vector<CentralContext> get_next_central_contexts(models::ModelParams& params,
                                                                std::int64_t iteration) = 0;

  // Runs one user. Must be safe to call concurrently for distinct users.
  virtual UserResult simulate_one_user(const models::ModelParams& params,
                                       const data::UserDataset& user,
                                       const CentralContext& context) const = 0;

  // Consumes the aggregates of every context and returns the new model.
  // `metrics` receives algorithm-level metrics for the iteration.
  virtual models::ModelParams process_aggregated_statistics_all_contexts(
      std::span<const ContextResult> results, const models::ModelParams& params,
      Metrics& metrics) = 0;
};

}  // namespace pflsim::algorithms
