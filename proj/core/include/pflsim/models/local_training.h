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
#include <functional>

#include "pflsim/core/context.h"
#include "pflsim/core/metrics.h"
#include "pflsim/core/statistics.h"
#include "pflsim/models/model.h"

namespace pflsim::models {

// Hook that edits the minibatch gradient in place before the SGD step, given
// the current local parameters. FedProx and SCAFFOLD plug in here.
using GradientCorrection = std::function<void(const ModelParams& current, ModelParams& grad)>;

struct LocalTrainResult {
  ModelParams params;
  std::int64_t num_steps = 0;
  Metrics metrics;  // "loss": central mean minibatch loss seen during training
};

// Seeded minibatch SGD for num_epochs passes. Each epoch reshuffles; the last
// partial batch is kept.
LocalTrainResult local_train_sgd(const Model& model, ModelParams params,
                                 const data::LabeledData& data, const LocalParams& local,
                                 std::uint64_t seed,
                                 const GradientCorrection& correction = nullptr);

// before - after, carried with the given weight.
Statistics model_update_delta(const ModelParams& before, const ModelParams& after, double weight);

}  // namespace pflsim::models
