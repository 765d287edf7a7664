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

#include "pflsim/core/metrics.h"

#include "pflsim/core/error.h"

namespace pflsim {

MetricValue MetricValue::central(double numerator, double denominator) {
  if (!(denominator > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "metric denominator must be positive");
  }
  return {MetricKind::kCentral, numerator, denominator};
}

MetricValue MetricValue::per_user(double user_value) {
  return {MetricKind::kPerUser, user_value, 1.0};
}

MetricValue& MetricValue::operator+=(const MetricValue& other) {
  if (kind != other.kind) {
    throw Error(ErrorCode::kInvalidArgument, "cannot merge central and per-user metrics");
  }
  numerator += other.numerator;
  denominator += other.denominator;
  return *this;
}

void Metrics::add(const std::string& name, const MetricValue& value) {
  auto [it, inserted] = values_.try_emplace(name, value);
  if (!inserted) it->second += value;
}

void Metrics::merge(const Metrics& other) {
  for (const auto& [name, value] : other.values_) add(name, value);
}

const MetricValue& Metrics::at(const std::string& name) const {
  auto it = values_.find(name);
  if (it == values_.end()) throw Error(ErrorCode::kInvalidArgument, "no metric named '" + name + "'");
  return it->second;
}

double metric_aggregate(std::span<const UserCounts> users, MetricKind kind) {
  if (users.empty()) throw Error(ErrorCode::kEmptyCohort, "no users to aggregate");
  Metrics m;
  for (const auto& u : users) {
    if (u.total < 1) throw Error(ErrorCode::kInvalidArgument, "user total must be >= 1");
    const double correct = static_cast<double>(u.correct);
    const double total = static_cast<double>(u.total);
    m.add("acc", kind == MetricKind::kCentral ? MetricValue::central(correct, total)
                                              : MetricValue::per_user(correct / total));
  }
  return m.value("acc");
}

}  // namespace pflsim
