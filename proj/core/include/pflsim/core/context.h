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
#include <optional>
#include <string_view>

#include "pflsim/core/hyperparam.h"

namespace pflsim {

enum class Population { kTrain, kVal };

std::string_view population_name(Population p);

enum class Weighting { kDatapoints, kUniform };

struct LocalParams {
  double learning_rate = 0.1;
  std::int64_t num_epochs = 1;
  std::int64_t batch_size = 10;
};

struct EvalParams {
  std::int64_t batch_size = 10000;
};

// Per-algorithm knobs carried in a context. Algorithms read only the fields
// they understand.
struct AlgorithmParams {
  Weighting weighting = Weighting::kDatapoints;
  double mu = 0.0;
};

// Recipe for one cohort query within a central iteration.
struct CentralContext {
  std::int64_t iteration = 0;
  Population population = Population::kTrain;
  std::int64_t cohort_size = 1;
  std::uint64_t seed = 0;
  std::optional<LocalParams> local_params;
  EvalParams eval_params;
  AlgorithmParams algo_params;

  bool do_training() const { return local_params.has_value(); }
  // Throws kInvalidArgument unless cohort_size >= 1 and local params are
  // present exactly for training populations.
  void validate() const;
};

}  // namespace pflsim
