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

#include <optional>
#include <vector>

#include "pflsim/algorithms/fedavg.h"

namespace pflsim::algorithms {

// Adds mu * (theta - anchor) to `grad`: the gradient of the proximal term
// (mu / 2) ||theta - anchor||^2.
void fedprox_local_step(const models::ModelParams& current, const models::ModelParams& anchor,
                        double mu, models::ModelParams& grad);

class FedProx : public FedAvg {
 public:
  FedProx(const models::Model& model, models::CentralOptimizer optimizer, FedAvgConfig config,
          double mu);

  std::string name() const override { return "fedprox"; }
  double mu() const { return mu_; }

 protected:
  AlgorithmParams next_algo_params() const override;
  models::GradientCorrection local_correction(const models::ModelParams& anchor,
                                              const CentralContext& context) const override;

  double mu_;
};

struct AdaptiveMuRule {
  double decrease_factor = 0.9;
  double increase_factor = 1.1;
  double min_mu = 1e-4;
  double max_mu = 1.0;
};

struct AdaFedProxState {
  double mu = 0.1;
  std::optional<double> previous_loss;
  std::vector<double> loss_history;
};

// Shrinks mu when the central training loss improved on the previous
// iteration, grows it when the loss got worse, and leaves it on a tie. The
// first observation only records the loss.
AdaFedProxState adafedprox_update_mu(AdaFedProxState state, double current_loss,
                                     const AdaptiveMuRule& rule = {});

class AdaFedProx : public FedProx {
 public:
  AdaFedProx(const models::Model& model, models::CentralOptimizer optimizer, FedAvgConfig config,
             double initial_mu, AdaptiveMuRule rule = {});

  std::string name() const override { return "adafedprox"; }
  const AdaFedProxState& state() const { return state_; }

 protected:
  void after_central_update(const ContextResult& train_result, Metrics& metrics) override;

 private:
  AdaFedProxState state_;
  AdaptiveMuRule rule_;
};

}  // namespace pflsim::algorithms
