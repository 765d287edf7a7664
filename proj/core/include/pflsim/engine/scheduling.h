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

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace pflsim::engine {

struct WeightedUser {
  std::string user_id;
  double weight = 0.0;
};

struct WorkerAssignment {
  std::vector<std::vector<std::string>> users;  // per worker, in processing order
  std::vector<double> loads;                    // per worker, sum of effective weights
};

// Greedy balancing: effective weight = weight + base; users sorted by
// effective weight descending (ties by user_id ascending), each placed on the
// worker with the smallest current load (ties to the lowest index).
WorkerAssignment schedule_users(std::span<const WeightedUser> users, std::size_t num_workers,
                                double base = 0.0);

// No scheduling: users dealt round-robin in cohort order.
WorkerAssignment schedule_round_robin(std::span<const WeightedUser> users, std::size_t num_workers,
                                      double base = 0.0);

struct BaseWeightPolicy {
  enum class Kind { kZero, kMedian, kFixed };
  Kind kind = Kind::kZero;
  double value = 0.0;  // for kFixed

  static BaseWeightPolicy zero() { return {}; }
  static BaseWeightPolicy median() { return {Kind::kMedian, 0.0}; }
  static BaseWeightPolicy fixed(double v) { return {Kind::kFixed, v}; }
};

// kMedian uses the lower median for even counts.
double compute_base_weight(std::span<const double> weights, BaseWeightPolicy policy);

// max - min of per-worker durations; 0 for a single worker.
double max_straggler_time(std::span<const double> per_worker_durations);

double makespan(const WorkerAssignment& assignment);

}  // namespace pflsim::engine
