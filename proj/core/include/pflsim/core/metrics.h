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
#include <map>
#include <span>
#include <string>

namespace pflsim {

enum class MetricKind { kCentral, kPerUser };

// A metric kept as sufficient statistics so that aggregation stays exact.
//  kCentral: numerator/denominator are summed across users before dividing.
//  kPerUser: numerator is a sum of per-user values, denominator a user count.
struct MetricValue {
  MetricKind kind = MetricKind::kCentral;
  double numerator = 0.0;
  double denominator = 1.0;

  static MetricValue central(double numerator, double denominator);
  static MetricValue per_user(double user_value);

  double value() const { return numerator / denominator; }
  MetricValue& operator+=(const MetricValue& other);
};

// Name -> metric. Merging adds sufficient statistics name by name.
class Metrics {
 public:
  void add(const std::string& name, const MetricValue& value);
  void merge(const Metrics& other);
  bool contains(const std::string& name) const { return values_.count(name) > 0; }
  const MetricValue& at(const std::string& name) const;
  double value(const std::string& name) const { return at(name).value(); }
  bool empty() const { return values_.empty(); }
  const std::map<std::string, MetricValue>& values() const { return values_; }

 private:
  std::map<std::string, MetricValue> values_;
};

struct UserCounts {
  std::int64_t correct = 0;
  std::int64_t total = 0;
};

// Aggregates per-user (correct, total) pairs into an accuracy-like ratio.
double metric_aggregate(std::span<const UserCounts> users, MetricKind kind);

}  // namespace pflsim
