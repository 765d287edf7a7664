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

#include "pflsim/algorithms/algorithm.h"
#include "pflsim/core/hyperparam.h"
#include "pflsim/models/central_optimizer.h"
#include "pflsim/models/local_training.h"

namespace pflsim::algorithms {

struct FedAvgConfig {
  std::int64_t iterations = 1;
  std::int64_t eval_frequency = 0;  // 0 disables the validation context
  std::int64_t cohort_size = 1;
  std::int64_t eval_cohort_size = 1;
  HyperParam local_learning_rate = 0.1;
  std::int64_t local_epochs = 1;
  std::int64_t local_batch_size = 10;
  std::int64_t eval_batch_size = 10000;
  Weighting weighting = Weighting::kDatapoints;
  std::uint64_t seed = 0;
};

// Contexts for FedAvg-style algorithms: empty at t == T, otherwise one
// training context plus a validation context when t % eval_frequency == 0.
std::vector<CentralContext> fedavg_next_contexts(const FedAvgConfig& config, std::int64_t iteration,
                                                 AlgorithmParams algo_params = {});

class FedAvg : public FederatedAlgorithm {
 public:
  FedAvg(const models::Model& model, models::CentralOptimizer optimizer, FedAvgConfig config);

  std::string name() const override { return "fedavg"; }
  std::vector<CentralContext> get_next_central_contexts(models::ModelParams& params,
                                                        std::int64_t iteration) override;
  UserResult simulate_one_user(const models::ModelParams& params, const data::UserDataset& user,
                               const CentralContext& context) const override;
  models::ModelParams process_aggregated_statistics_all_contexts(
      std::span<const ContextResult> results, const models::ModelParams& params,
      Metrics& metrics) override;

  const FedAvgConfig& config() const { return config_; }
  const models::CentralOptimizer& optimizer() const { return optimizer_; }

 protected:
  // Algorithm parameters stamped on the contexts of the next iteration.
  virtual AlgorithmParams next_algo_params() const;
  // Gradient hook for local training; none for plain FedAvg.
  virtual models::GradientCorrection local_correction(const models::ModelParams& anchor,
                                                      const CentralContext& context) const;
  // Runs after the central step with the training context's results.
  virtual void after_central_update(const ContextResult& train_result, Metrics& metrics);

  const models::Model& model_;
  models::CentralOptimizer optimizer_;
  FedAvgConfig config_;
};

// Evaluation used by validation contexts: loss, accuracy and per-user accuracy.
Metrics evaluate_user(const models::Model& model, const models::ModelParams& params,
                      const data::UserDataset& user);

// Weighted model update for one trained user: (before - after) scaled to the
// user's weight under `weighting`.
Statistics weighted_update(const models::ModelParams& before, const models::ModelParams& after,
                           const data::UserDataset& user, Weighting weighting);

}  // namespace pflsim::algorithms
