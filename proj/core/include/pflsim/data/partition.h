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

#include "pflsim/data/dataset.h"

namespace pflsim::data {

// Shuffles the source with `seed` and cuts it into users of exactly
// points_per_user points. Remainder points are dropped and counted in
// FederatedDataset::dropped_points.
FederatedDataset partition_iid(const LabeledData& source, std::size_t points_per_user,
                               std::uint64_t seed, Population population = Population::kTrain);

// Non-IID split: each user draws class proportions from Dirichlet(alpha * 1_K)
// and then samples points_per_user points without replacement from the
// per-class pools. Exhausted classes are removed and the remaining mass
// renormalized.
FederatedDataset partition_dirichlet(const LabeledData& source, std::size_t num_users,
                                     std::size_t points_per_user, double alpha,
                                     std::uint64_t seed,
                                     Population population = Population::kTrain);

}  // namespace pflsim::data
