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

#include "pflsim/data/partition.h"

#include <algorithm>
#include <iostream>
#include <numeric>
#include <random>

#include "pflsim/core/error.h"
#include "pflsim/core/seeding.h"

namespace pflsim::data {

FederatedDataset partition_iid(const LabeledData& source, std::size_t points_per_user,
                               std::uint64_t seed, Population population) {
  if (points_per_user == 0) throw Error(ErrorCode::kInvalidArgument, "points_per_user must be >= 1");
  if (source.size() < points_per_user) {
    throw Error(ErrorCode::kTooFewPoints, std::to_string(source.size()) + " points cannot fill a user of " +
                                              std::to_string(points_per_user));
  }
  std::vector<std::size_t> order(source.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(derive_seed(seed, SeedStream::kData, 0, "partition_iid"));
  std::shuffle(order.begin(), order.end(), rng);

  FederatedDataset out(population);
  const std::size_t num_users = source.size() / points_per_user;
  for (std::size_t u = 0; u < num_users; ++u) {
    std::span<const std::size_t> idx(order.data() + u * points_per_user, points_per_user);
    out.add_user(UserDataset(make_user_id(u, population), source.subset(idx)));
  }
  out.dropped_points = source.size() - num_users * points_per_user;
  if (out.dropped_points > 0) {
    std::clog << "warning: partition_iid dropped " << out.dropped_points
              << " remainder points\n";
  }
  return out;
}

FederatedDataset partition_dirichlet(const LabeledData& source, std::size_t num_users,
                                     std::size_t points_per_user, double alpha,
                                     std::uint64_t seed, Population population) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::kInvalidArgument, "Dirichlet alpha must be > 0");
  if (points_per_user == 0) throw Error(ErrorCode::kInvalidArgument, "points_per_user must be >= 1");
  if (source.size() < num_users * points_per_user) {
    throw Error(ErrorCode::kInsufficientData,
                std::to_string(source.size()) + " points cannot fill " + std::to_string(num_users) +
                    " users of " + std::to_string(points_per_user));
  }
  const int num_classes = source.num_classes();
  Rng rng(derive_seed(seed, SeedStream::kData, 0, "partition_dirichlet"));

  // Per-class pools, shuffled once; drawing pops from the back.
  std::vector<std::vector<std::size_t>> pools(static_cast<std::size_t>(num_classes));
  for (std::size_t i = 0; i < source.size(); ++i) {
    pools[static_cast<std::size_t>(source.labels[i])].push_back(i);
  }
  for (auto& pool : pools) std::shuffle(pool.begin(), pool.end(), rng);

  std::gamma_distribution<double> gamma(alpha, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  FederatedDataset out(population);
  std::vector<double> proportions(pools.size());
  std::vector<std::size_t> picked;
  for (std::size_t u = 0; u < num_users; ++u) {
    for (double& p : proportions) p = gamma(rng);
    picked.clear();
    for (std::size_t k = 0; k < points_per_user; ++k) {
      double mass = 0.0;
      std::size_t nonempty = 0;
      for (std::size_t c = 0; c < pools.size(); ++c) {
        if (!pools[c].empty()) {
          mass += proportions[c];
          ++nonempty;
        }
      }
      // Proportions can underflow to zero for tiny alpha; fall back to a
      // uniform choice over the classes that still have points.
      const bool uniform = !(mass > 0.0);
      double target = unit(rng) * (uniform ? static_cast<double>(nonempty) : mass);
      std::size_t chosen = pools.size();
      for (std::size_t c = 0; c < pools.size(); ++c) {
        if (pools[c].empty()) continue;
        chosen = c;
        target -= uniform ? 1.0 : proportions[c];
        if (target < 0.0) break;
      }
      picked.push_back(pools[chosen].back());
      pools[chosen].pop_back();
    }
    out.add_user(UserDataset(make_user_id(u, population), source.subset(picked)));
  }
  out.dropped_points = source.size() - num_users * points_per_user;
  return out;
}

}  // namespace pflsim::data
