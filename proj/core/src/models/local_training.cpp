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

#include "pflsim/models/local_training.h"

#include <algorithm>
#include <numeric>

#include "pflsim/core/error.h"
#include "pflsim/core/seeding.h"

namespace pflsim::models {

LocalTrainResult local_train_sgd(const Model& model, ModelParams params,
                                 const data::LabeledData& data, const LocalParams& local,
                                 std::uint64_t seed, const GradientCorrection& correction) {
  if (local.batch_size < 1) throw Error(ErrorCode::kInvalidArgument, "batch_size must be >= 1");
  if (local.num_epochs < 0) throw Error(ErrorCode::kInvalidArgument, "num_epochs must be >= 0");
  if (!(local.learning_rate > 0.0)) throw Error(ErrorCode::kInvalidArgument, "learning rate must be > 0");

  LocalTrainResult result;
  if (data.empty() || local.num_epochs == 0) {
    result.params = std::move(params);
    return result;
  }

  Rng rng(seed);
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  const auto batch = static_cast<std::size_t>(local.batch_size);
  ModelParams grad;
  double loss_sum = 0.0;
  double seen = 0.0;
  for (std::int64_t epoch = 0; epoch < local.num_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t start = 0; start < order.size(); start += batch) {
      const std::size_t n = std::min(batch, order.size() - start);
      const double loss =
          model.loss_and_gradient(params, data, std::span(order.data() + start, n), grad);
      loss_sum += loss * static_cast<double>(n);
      seen += static_cast<double>(n);
      if (correction) correction(params, grad);
      for (auto& [name, p] : params) {
        const auto& g = grad.at(name);
        for (std::size_t i = 0; i < p.size(); ++i) p[i] -= local.learning_rate * g[i];
      }
      ++result.num_steps;
    }
  }
  result.params = std::move(params);
  result.metrics.add("loss", MetricValue::central(loss_sum, seen));
  return result;
}

Statistics model_update_delta(const ModelParams& before, const ModelParams& after, double weight) {
  if (!same_shape(before, after)) {
    throw Error(ErrorCode::kIncompatibleShapes, "model parameters changed shape");
  }
  NamedVectors delta = before;
  for (auto& [name, d] : delta) {
    const auto& a = after.at(name);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= a[i];
  }
  return Statistics(std::move(delta), weight);
}

}  // namespace pflsim::models
