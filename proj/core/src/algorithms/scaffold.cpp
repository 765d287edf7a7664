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

#include "pflsim/algorithms/scaffold.h"

#include "pflsim/core/error.h"
#include "pflsim/core/seeding.h"

namespace pflsim::algorithms {

namespace {

NamedVectors with_prefix(std::string_view prefix, const NamedVectors& v) {
  NamedVectors out;
  for (const auto& [name, values] : v) out.emplace(std::string(prefix) + name, values);
  return out;
}

NamedVectors strip_prefix(std::string_view prefix, const NamedVectors& v) {
  NamedVectors out;
  for (const auto& [name, values] : v) {
    if (name.compare(0, prefix.size(), prefix) == 0) out.emplace(name.substr(prefix.size()), values);
  }
  return out;
}

}  // namespace

Scaffold::Scaffold(const models::Model& model, models::CentralOptimizer optimizer,
                   FedAvgConfig config, std::size_t population_size)
    : FedAvg(model, std::move(optimizer), std::move(config)), population_size_(population_size) {
  if (population_size_ == 0) throw Error(ErrorCode::kInvalidArgument, "SCAFFOLD needs a non-empty population");
}

NamedVectors Scaffold::user_control(const std::string& user_id, const models::ModelParams& like) const {
  auto it = user_controls_.find(user_id);
  return it != user_controls_.end() ? it->second : zeros_like(like);
}

UserResult Scaffold::simulate_one_user(const models::ModelParams& params,
                                       const data::UserDataset& user,
                                       const CentralContext& context) const {
  if (!context.do_training()) return FedAvg::simulate_one_user(params, user, context);

  const NamedVectors c = server_control_.empty() ? zeros_like(params) : server_control_;
  const NamedVectors c_i = user_control(user.user_id(), params);
  if (!same_shape(c, params) || !same_shape(c_i, params)) {
    throw Error(ErrorCode::kIncompatibleShapes, "control variates do not match the model");
  }
  const models::GradientCorrection correction = [&c, &c_i](const models::ModelParams&,
                                                           models::ModelParams& grad) {
    for (auto& [name, g] : grad) {
      const auto& ci = c_i.at(name);
      const auto& cs = c.at(name);
      for (std::size_t k = 0; k < g.size(); ++k) g[k] += cs[k] - ci[k];
    }
  };

  UserResult out;
  const models::EvalResult before = model_.evaluate(params, user.data());
  out.metrics.add("central_loss", MetricValue::central(before.loss_sum, static_cast<double>(before.count)));
  const std::uint64_t seed = derive_seed(context.seed, SeedStream::kLocalTraining,
                                         static_cast<std::uint64_t>(context.iteration), user.user_id());
  const double lr = context.local_params->learning_rate;
  models::LocalTrainResult local =
      models::local_train_sgd(model_, params, user.data(), *context.local_params, seed, correction);
  const double k_lr = static_cast<double>(local.num_steps) * lr;
  if (k_lr == 0.0) {
    throw Error(ErrorCode::kZeroLocalSteps, "SCAFFOLD user '" + user.user_id() + "' took no local steps");
  }
  out.metrics.merge(local.metrics);

  NamedVectors model_delta = models::model_update_delta(params, local.params, 1.0).entries();
  NamedVectors new_c_i = c_i;
  NamedVectors control_delta = zeros_like(params);
  for (auto& [name, values] : new_c_i) {
    const auto& d = model_delta.at(name);
    const auto& cs = c.at(name);
    auto& dc = control_delta.at(name);
    for (std::size_t k = 0; k < values.size(); ++k) {
      const double updated = values[k] - cs[k] + d[k] / k_lr;
      dc[k] = updated - values[k];
      values[k] = updated;
    }
  }

  NamedVectors bundle = with_prefix(kModelPrefix, model_delta);
  bundle.merge(with_prefix(kControlPrefix, control_delta));
  Statistics stats(std::move(bundle), 1.0);
  out.statistics = context.algo_params.weighting == Weighting::kDatapoints ? stats.reweighted(user.weight())
                                                                           : stats;
  out.user_state = std::move(new_c_i);
  out.aux["num_datapoints"] = user.weight();
  out.aux["num_steps"] = static_cast<double>(local.num_steps);
  return out;
}

models::ModelParams Scaffold::process_aggregated_statistics_all_contexts(
    std::span<const ContextResult> results, const models::ModelParams& params, Metrics& metrics) {
  models::ModelParams next = params;
  for (const auto& r : results) {
    if (!r.context.do_training()) continue;
    if (!r.aggregate) {
      throw Error(ErrorCode::kMissingAggregate,
                  "no aggregated statistics for training context at iteration " +
                      std::to_string(r.context.iteration));
    }
    const Statistics avg = average(*r.aggregate);
    next = optimizer_.step(next, Statistics(strip_prefix(kModelPrefix, avg.entries()), 1.0),
                           r.context.iteration);

    if (server_control_.empty()) server_control_ = zeros_like(params);
    const NamedVectors control_delta = strip_prefix(kControlPrefix, avg.entries());
    if (!same_shape(control_delta, server_control_)) {
      throw Error(ErrorCode::kIncompatibleShapes, "aggregated control delta does not match the model");
    }
    const double fraction = static_cast<double>(r.cohort.size()) / static_cast<double>(population_size_);
    for (auto& [name, values] : server_control_) {
      const auto& d = control_delta.at(name);
      for (std::size_t k = 0; k < values.size(); ++k) values[k] += fraction * d[k];
    }
    for (const auto& [user_id, state] : r.user_states) user_controls_[user_id] = state;
    metrics.add("server_control_norm", MetricValue::central(l2_norm(server_control_), 1.0));
  }
  return next;
}

}  // namespace pflsim::algorithms
