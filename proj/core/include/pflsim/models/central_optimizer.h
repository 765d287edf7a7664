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

#include "pflsim/core/hyperparam.h"
#include "pflsim/core/statistics.h"
#include "pflsim/models/model.h"

namespace pflsim::models {

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.99;
  // Added to sqrt(v_hat) in the denominator.
  double adaptivity_degree = 0.1;
};

// Server-side optimizer that treats the averaged model update as a gradient.
class CentralOptimizer {
 public:
  enum class Kind { kSgd, kAdam };

  static CentralOptimizer sgd(HyperParam learning_rate);
  static CentralOptimizer adam(HyperParam learning_rate, AdamConfig config = {});

  Kind kind() const { return kind_; }
  std::int64_t step_count() const { return step_count_; }
  const HyperParam& learning_rate() const { return learning_rate_; }
  const NamedVectors& first_moment() const { return first_moment_; }
  const NamedVectors& second_moment() const { return second_moment_; }

  // Applies one step at central iteration `iteration` (used to resolve the
  // learning-rate schedule). `averaged_delta` must have weight 1.
  ModelParams step(const ModelParams& params, const Statistics& averaged_delta,
                   std::int64_t iteration);

 private:
  CentralOptimizer(Kind kind, HyperParam lr, AdamConfig adam)
      : kind_(kind), learning_rate_(std::move(lr)), adam_(adam) {}

  Kind kind_;
  HyperParam learning_rate_;
  AdamConfig adam_;
  std::int64_t step_count_ = 0;
  NamedVectors first_moment_;
  NamedVectors second_moment_;
};

}  // namespace pflsim::models
