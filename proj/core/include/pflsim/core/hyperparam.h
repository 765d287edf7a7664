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
#include <variant>
#include <vector>

namespace pflsim {

// A hyperparameter that may change between central iterations. It is
// resolved once at the start of an iteration and is constant within it.
class HyperParam {
 public:
  struct Constant {};
  // value = base * min(1, (t + 1) / warmup_iterations)
  struct LinearWarmup {
    std::int64_t warmup_iterations = 0;
  };
  // value = base * factors[k] for boundaries[k-1] <= t < boundaries[k],
  // with factors.size() == boundaries.size() + 1.
  struct PiecewiseConstant {
    std::vector<std::int64_t> boundaries;
    std::vector<double> factors;
  };
  using Schedule = std::variant<Constant, LinearWarmup, PiecewiseConstant>;

  HyperParam(double base_value = 0.0) : base_value_(base_value) {}  // NOLINT
  HyperParam(double base_value, Schedule schedule);

  static HyperParam linear_warmup(double base_value, std::int64_t warmup_iterations);
  static HyperParam piecewise(double base_value, std::vector<std::int64_t> boundaries,
                              std::vector<double> factors);

  double base_value() const { return base_value_; }
  const Schedule& schedule() const { return schedule_; }
  double value_at(std::int64_t iteration) const;

 private:
  double base_value_;
  Schedule schedule_ = Constant{};
};

}  // namespace pflsim
