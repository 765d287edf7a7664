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

#include "pflsim/algorithms/fedprox.h"

#include <algorithm>
#include <cmath>

#include "pflsim/core/error.h"

namespace pflsim::algorithms {

void fedprox_local_step(const models::ModelParams& current, const models::ModelParams& anchor,
                        double mu, models::ModelParams& grad) {
  if (!(mu >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "mu must be >= 0");
  if (mu == 0.0) return;
  for (auto& [name, g] : grad) {
    const auto& theta = current.at(name);
    const auto& theta_t = anchor.at(name);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += mu * (theta[i] - theta_t[i]);
  }
}

FedProx::FedProx(const models::Model& model, models::CentralOptimizer optimizer,
                 FedAvgConfig config, double mu)
    : FedAvg(model, std::move(optimizer), std::move(config)), mu_(mu) {
  if (!(mu >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "mu must be >= 0");
}

AlgorithmParams FedProx::next_algo_params() const {
  AlgorithmParams p = FedAvg::next_algo_params();
  p.mu = mu_;
  return p;
}

models::GradientCorrection FedProx::local_correction(const models::ModelParams& anchor,
                                                     const CentralContext& context) const {
  const double mu = context.algo_params.mu;
  if (mu == 0.0) return nullptr;
  // The anchor outlives local training: it is the params argument of
  // simulate_one_user.
  return [&anchor, mu](const models::ModelParams& current, models::ModelParams& grad) {
    fedprox_local_step(current, anchor, mu, grad);
  };
}

AdaFedProxState adafedprox_update_mu(AdaFedProxState state, double current_loss,
                                     const AdaptiveMuRule& rule) {
  if (!std::isfinite(current_loss)) throw Error(ErrorCode::kInvalidArgument, "loss must be finite");
  if (state.previous_loss) {
    if (current_loss < *state.previous_loss) {
      state.mu = std::max(rule.min_mu, state.mu * rule.decrease_factor);
    } else if (current_loss > *state.previous_loss) {
      state.mu = std::min(rule.max_mu, state.mu * rule.increase_factor);
    }
  }
  state.previous_loss = current_loss;
  state.loss_history.push_back(current_loss);
  return state;
}

AdaFedProx::AdaFedProx(const models::Model& model, models::CentralOptimizer optimizer,
                       FedAvgConfig config, double initial_mu, AdaptiveMuRule rule)
    : FedProx(model, std::move(optimizer), std::move(config), initial_mu), rule_(rule) {
  state_.mu = initial_mu;
}

void AdaFedProx::after_central_update(const ContextResult& train_result, Metrics& metrics) {
  if (!train_result.metrics.contains("central_loss")) return;
  state_ = adafedprox_update_mu(std::move(state_), train_result.metrics.value("central_loss"), rule_);
  mu_ = state_.mu;
  metrics.add("mu", MetricValue::central(mu_, 1.0));
}

}  // namespace pflsim::algorithms
