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

#include "pflsim/engine/scheduling.h"

#include <algorithm>
#include <numeric>

#include "pflsim/core/error.h"

namespace pflsim::engine {

namespace {

void check_inputs(std::span<const WeightedUser> users, std::size_t num_workers, double base) {
  if (num_workers < 1) throw Error(ErrorCode::kInvalidArgument, "need at least one worker");
  if (!(base >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "base weight must be >= 0");
  for (const auto& u : users) {
    if (!(u.weight > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "user '" + u.user_id + "' has non-positive weight");
    }
  }
}

}  // namespace

WorkerAssignment schedule_users(std::span<const WeightedUser> users, std::size_t num_workers,
                                double base) {
  check_inputs(users, num_workers, base);
  std::vector<const WeightedUser*> order;
  order.reserve(users.size());
  for (const auto& u : users) order.push_back(&u);
  std::sort(order.begin(), order.end(), [](const WeightedUser* a, const WeightedUser* b) {
    if (a->weight != b->weight) return a->weight > b->weight;
    return a->user_id < b->user_id;
  });

  WorkerAssignment out{std::vector<std::vector<std::string>>(num_workers),
                       std::vector<double>(num_workers, 0.0)};
  for (const WeightedUser* u : order) {
    // min_element returns the first minimum, i.e. the lowest index on ties.
    const auto w = static_cast<std::size_t>(
        std::min_element(out.loads.begin(), out.loads.end()) - out.loads.begin());
    out.users[w].push_back(u->user_id);
    out.loads[w] += u->weight + base;
  }
  return out;
}

WorkerAssignment schedule_round_robin(std::span<const WeightedUser> users, std::size_t num_workers,
                                      double base) {
  check_inputs(users, num_workers, base);
  WorkerAssignment out{std::vector<std::vector<std::string>>(num_workers),
                       std::vector<double>(num_workers, 0.0)};
  for (std::size_t i = 0; i < users.size(); ++i) {
    out.users[i % num_workers].push_back(users[i].user_id);
    out.loads[i % num_workers] += users[i].weight + base;
  }
  return out;
}

double compute_base_weight(std::span<const double> weights, BaseWeightPolicy policy) {
  switch (policy.kind) {
    case BaseWeightPolicy::Kind::kZero:
      return 0.0;
    case BaseWeightPolicy::Kind::kFixed:
      return policy.value;
    case BaseWeightPolicy::Kind::kMedian: {
      if (weights.empty()) throw Error(ErrorCode::kEmptyCohort, "median of an empty cohort");
      std::vector<double> sorted(weights.begin(), weights.end());
      const std::size_t k = (sorted.size() - 1) / 2;
      std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k), sorted.end());
      return sorted[k];
    }
  }
  return 0.0;
}

double max_straggler_time(std::span<const double> per_worker_durations) {
  if (per_worker_durations.empty()) throw Error(ErrorCode::kInvalidArgument, "need at least one worker");
  const auto [lo, hi] = std::minmax_element(per_worker_durations.begin(), per_worker_durations.end());
  return *hi - *lo;
}

double makespan(const WorkerAssignment& assignment) {
  if (assignment.loads.empty()) return 0.0;
  return *std::max_element(assignment.loads.begin(), assignment.loads.end());
}

}  // namespace pflsim::engine
