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
#include <memory>
#include <span>
#include <string>

#include "pflsim/core/statistics.h"
#include "pflsim/data/dataset.h"

namespace pflsim::models {

using ModelParams = NamedVectors;

struct EvalResult {
  double loss_sum = 0.0;
  std::int64_t correct = 0;
  std::int64_t count = 0;
};

// Stateless differentiable model. Parameters live outside the model so one
// instance can serve every worker concurrently.
class Model {
 public:
  virtual ~Model() = default;

  virtual std::string name() const = 0;
  virtual ModelParams init_params(std::uint64_t seed) const = 0;

  // Mean loss over `rows` of `data`; overwrites `grad` with its gradient.
  virtual double loss_and_gradient(const ModelParams& params, const data::LabeledData& data,
                                   std::span<const std::size_t> rows,
                                   ModelParams& grad) const = 0;

  virtual EvalResult evaluate(const ModelParams& params, const data::LabeledData& data) const = 0;
};

// Multinomial logistic regression: logits = weight * x + bias.
class LogisticRegression final : public Model {
 public:
  LogisticRegression(std::size_t dim, int num_classes);

  std::string name() const override { return "logistic"; }
  ModelParams init_params(std::uint64_t seed) const override;
  double loss_and_gradient(const ModelParams& params, const data::LabeledData& data,
                           std::span<const std::size_t> rows, ModelParams& grad) const override;
  EvalResult evaluate(const ModelParams& params, const data::LabeledData& data) const override;

 private:
  std::size_t dim_;
  std::size_t classes_;
};

// One hidden ReLU layer followed by a softmax output layer.
class Mlp final : public Model {
 public:
  Mlp(std::size_t dim, std::size_t hidden, int num_classes);

  std::string name() const override { return "mlp"; }
  ModelParams init_params(std::uint64_t seed) const override;
  double loss_and_gradient(const ModelParams& params, const data::LabeledData& data,
                           std::span<const std::size_t> rows, ModelParams& grad) const override;
  EvalResult evaluate(const ModelParams& params, const data::LabeledData& data) const override;

 private:
  std::size_t dim_;
  std::size_t hidden_;
  std::size_t classes_;
};

// Mean estimation: loss(x) = 0.5 * ||theta - x||^2, labels ignored. Its
// closed-form trajectories make it the reference model for analytic checks.
class QuadraticModel final : public Model {
 public:
  explicit QuadraticModel(std::size_t dim) : dim_(dim) {}

  std::string name() const override { return "quadratic"; }
  ModelParams init_params(std::uint64_t seed) const override;
  double loss_and_gradient(const ModelParams& params, const data::LabeledData& data,
                           std::span<const std::size_t> rows, ModelParams& grad) const override;
  EvalResult evaluate(const ModelParams& params, const data::LabeledData& data) const override;

 private:
  std::size_t dim_;
};

}  // namespace pflsim::models
