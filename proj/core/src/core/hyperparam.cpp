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

#include "pflsim/core/hyperparam.h"

#include <algorithm>

#include "pflsim/core/error.h"

namespace pflsim {

HyperParam::HyperParam(double base_value, Schedule schedule)
    : base_value_(base_value), schedule_(std::move(schedule)) {
  if (const auto* p = std::get_if<PiecewiseConstant>(&schedule_)) {
    if (p->factors.size() != p->boundaries.size() + 1 ||
        !std::is_sorted(p->boundaries.begin(), p->boundaries.end())) {
      throw Error(ErrorCode::kInvalidArgument,
                  "piecewise schedule needs sorted boundaries and one more factor than boundaries");
    }
  }
  if (const auto* w = std::get_if<LinearWarmup>(&schedule_); w && w->warmup_iterations < 0) {
    throw Error(ErrorCode::kInvalidArgument, "warmup iterations must be >= 0");
  }
}

HyperParam HyperParam::linear_warmup(double base_value, std::int64_t warmup_iterations) {
  return HyperParam(base_value, LinearWarmup{warmup_iterations});
}

HyperParam HyperParam::piecewise(double base_value, std::vector<std::int64_t> boundaries,
                                 std::vector<double> factors) {
  return HyperParam(base_value, PiecewiseConstant{std::move(boundaries), std::move(factors)});
}

double HyperParam::value_at(std::int64_t iteration) const {
  struct Visitor {
    double base;
    std::int64_t t;
    double operator()(const Constant&) const { return base; }
    double operator()(const LinearWarmup& w) const {
      if (w.warmup_iterations <= 0 || t + 1 >= w.warmup_iterations) return base;
      return base * static_cast<double>(t + 1) / static_cast<double>(w.warmup_iterations);
    }
    double operator()(const PiecewiseConstant& p) const {
      const auto k = std::upper_bound(p.boundaries.begin(), p.boundaries.end(), t) -
                     p.boundaries.begin();
      return base * p.factors[static_cast<std::size_t>(k)];
    }
  };
  return std::visit(Visitor{base_value_, iteration}, schedule_);
}

}  // namespace pflsim
