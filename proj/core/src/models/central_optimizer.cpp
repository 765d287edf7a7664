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

#include "pflsim/models/central_optimizer.h"

#include <cmath>

#include "pflsim/core/error.h"

namespace pflsim::models {

CentralOptimizer CentralOptimizer::sgd(HyperParam learning_rate) {
  return CentralOptimizer(Kind::kSgd, std::move(learning_rate), {});
}

CentralOptimizer CentralOptimizer::adam(HyperParam learning_rate, AdamConfig config) {
  if (!(config.beta1 >= 0.0 && config.beta1 < 1.0 && config.beta2 >= 0.0 && config.beta2 < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "Adam betas must be in [0, 1)");
  }
  if (!(config.adaptivity_degree > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "Adam adaptivity degree must be > 0");
  }
  return CentralOptimizer(Kind::kAdam, std::move(learning_rate), config);
}

ModelParams CentralOptimizer::step(const ModelParams& params, const Statistics& averaged_delta,
                                   std::int64_t iteration) {
  if (!same_shape(params, averaged_delta.entries())) {
    throw Error(ErrorCode::kIncompatibleShapes, "model update does not match model parameters");
  }
  if (averaged_delta.weight() != 1.0) {
    throw Error(ErrorCode::kInvalidArgument, "central step expects an averaged update (weight 1)");
  }
  const double lr = learning_rate_.value_at(iteration);
  ModelParams out = params;
  ++step_count_;
  if (kind_ == Kind::kSgd) {
    for (auto& [name, p] : out) {
      const auto& d = averaged_delta.at(name);
      for (std::size_t i = 0; i < p.size(); ++i) p[i] -= lr * d[i];
    }
    return out;
  }

  if (first_moment_.empty()) {
    first_moment_ = zeros_like(params);
    second_moment_ = zeros_like(params);
  }
  const double t = static_cast<double>(step_count_);
  const double c1 = 1.0 - std::pow(adam_.beta1, t);
  const double c2 = 1.0 - std::pow(adam_.beta2, t);
  for (auto& [name, p] : out) {
    const auto& g = averaged_delta.at(name);
    auto& m = first_moment_.at(name);
    auto& v = second_moment_.at(name);
    for (std::size_t i = 0; i < p.size(); ++i) {
      m[i] = adam_.beta1 * m[i] + (1.0 - adam_.beta1) * g[i];
      v[i] = adam_.beta2 * v[i] + (1.0 - adam_.beta2) * g[i] * g[i];
      const double m_hat = m[i] / c1;
      const double v_hat = v[i] / c2;
      p[i] -= lr * m_hat / (std::sqrt(v_hat) + adam_.adaptivity_degree);
    }
  }
  return out;
}

}  // namespace pflsim::models
