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

#include "pflsim/algorithms/fedavg.h"

#include "pflsim/core/error.h"
#include "pflsim/core/seeding.h"

namespace pflsim::algorithms {

std::vector<CentralContext> fedavg_next_contexts(const FedAvgConfig& config, std::int64_t iteration,
                                                 AlgorithmParams algo_params) {
  if (iteration < 0 || iteration > config.iterations) {
    throw Error(ErrorCode::kInvalidArgument, "iteration outside [0, T]");
  }
  std::vector<CentralContext> contexts;
  if (iteration == config.iterations) return contexts;

  CentralContext train;
  train.iteration = iteration;
  train.population = Population::kTrain;
  train.cohort_size = config.cohort_size;
  train.seed = derive_seed(config.seed, SeedStream::kLocalTraining, static_cast<std::uint64_t>(iteration),
                           population_name(Population::kTrain));
  train.local_params = LocalParams{config.local_learning_rate.value_at(iteration), config.local_epochs,
                                   config.local_batch_size};
  train.eval_params.batch_size = config.eval_batch_size;
  train.algo_params = algo_params;
  contexts.push_back(train);

  if (config.eval_frequency > 0 && iteration % config.eval_frequency == 0) {
    CentralContext val;
    val.iteration = iteration;
    val.population = Population::kVal;
    val.cohort_size = config.eval_cohort_size;
    val.seed = derive_seed(config.seed, SeedStream::kLocalTraining, static_cast<std::uint64_t>(iteration),
                           population_name(Population::kVal));
    val.eval_params.batch_size = config.eval_batch_size;
    val.algo_params = algo_params;
    contexts.push_back(val);
  }
  return contexts;
}

Metrics evaluate_user(const models::Model& model, const models::ModelParams& params,
                      const data::UserDataset& user) {
  const models::EvalResult r = model.evaluate(params, user.data());
  Metrics m;
  const auto count = static_cast<double>(r.count);
  m.add("loss", MetricValue::central(r.loss_sum, count));
  m.add("accuracy", MetricValue::central(static_cast<double>(r.correct), count));
  m.add("per_user_accuracy", MetricValue::per_user(static_cast<double>(r.correct) / count));
  return m;
}

Statistics weighted_update(const models::ModelParams& before, const models::ModelParams& after,
                           const data::UserDataset& user, Weighting weighting) {
  Statistics delta = models::model_update_delta(before, after, 1.0);
  return weighting == Weighting::kDatapoints ? delta.reweighted(user.weight()) : delta;
}

FedAvg::FedAvg(const models::Model& model, models::CentralOptimizer optimizer, FedAvgConfig config)
    : model_(model), optimizer_(std::move(optimizer)), config_(std::move(config)) {
  if (config_.iterations < 0) throw Error(ErrorCode::kInvalidArgument, "iterations must be >= 0");
  if (config_.cohort_size < 1 || config_.eval_cohort_size < 1) {
    throw Error(ErrorCode::kInvalidArgument, "cohort sizes must be >= 1");
  }
  if (config_.eval_frequency < 0) throw Error(ErrorCode::kInvalidArgument, "eval frequency must be >= 0");
}

std::vector<CentralContext> FedAvg::get_next_central_contexts(models::ModelParams&,
                                                              std::int64_t iteration) {
  return fedavg_next_contexts(config_, iteration, next_algo_params());
}

AlgorithmParams FedAvg::next_algo_params() const {
  AlgorithmParams p;
  p.weighting = config_.weighting;
  return p;
}

models::GradientCorrection FedAvg::local_correction(const models::ModelParams&,
                                                    const CentralContext&) const {
  return nullptr;
}

void FedAvg::after_central_update(const ContextResult&, Metrics&) {}

UserResult FedAvg::simulate_one_user(const models::ModelParams& params,
                                     const data::UserDataset& user,
                                     const CentralContext& context) const {
  UserResult out;
  if (!context.do_training()) {
    out.metrics = evaluate_user(model_, params, user);
    return out;
  }
  // The central model's loss on this user before local training.
  const models::EvalResult before = model_.evaluate(params, user.data());
  out.metrics.add("central_loss", MetricValue::central(before.loss_sum, static_cast<double>(before.count)));

  const std::uint64_t seed = derive_seed(context.seed, SeedStream::kLocalTraining,
                                         static_cast<std::uint64_t>(context.iteration), user.user_id());
  models::LocalTrainResult local = models::local_train_sgd(
      model_, params, user.data(), *context.local_params, seed, local_correction(params, context));
  out.metrics.merge(local.metrics);
  out.statistics = weighted_update(params, local.params, user, context.algo_params.weighting);
  out.aux["num_datapoints"] = user.weight();
  out.aux["num_steps"] = static_cast<double>(local.num_steps);
  return out;
}

models::ModelParams FedAvg::process_aggregated_statistics_all_contexts(
    std::span<const ContextResult> results, const models::ModelParams& params, Metrics& metrics) {
  models::ModelParams next = params;
  for (const auto& r : results) {
    if (!r.context.do_training()) continue;
    if (!r.aggregate) {
      throw Error(ErrorCode::kMissingAggregate,
                  "no aggregated statistics for training context at iteration " +
                      std::to_string(r.context.iteration));
    }
    next = optimizer_.step(next, average(*r.aggregate), r.context.iteration);
    metrics.add("central_lr", MetricValue::central(optimizer_.learning_rate().value_at(r.context.iteration), 1.0));
    after_central_update(r, metrics);
  }
  return next;
}

}  // namespace pflsim::algorithms
