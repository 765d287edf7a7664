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

#include "pflsim/data/sampling.h"

#include <random>

#include "pflsim/core/error.h"
#include "pflsim/core/seeding.h"

namespace pflsim::data {

std::vector<std::string> sample_cohort(const FederatedDataset& dataset, std::size_t cohort_size,
                                       std::uint64_t seed, CohortMode mode) {
  std::vector<std::string> ids = dataset.user_ids();
  Rng rng(seed);
  if (mode.kind == CohortMode::Kind::kPoisson) {
    if (!(mode.q > 0.0 && mode.q <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "Poisson sampling rate must be in (0, 1]");
    }
    std::bernoulli_distribution coin(mode.q);
    std::vector<std::string> cohort;
    for (auto& id : ids) {
      if (coin(rng)) cohort.push_back(std::move(id));
    }
    return cohort;
  }
  if (cohort_size > ids.size()) {
    throw Error(ErrorCode::kCohortTooLarge, "cohort of " + std::to_string(cohort_size) +
                                                " from " + std::to_string(ids.size()) + " users");
  }
  // Partial Fisher-Yates: position k receives the k-th draw.
  for (std::size_t k = 0; k < cohort_size; ++k) {
    std::uniform_int_distribution<std::size_t> pick(k, ids.size() - 1);
    std::swap(ids[k], ids[pick(rng)]);
  }
  ids.resize(cohort_size);
  return ids;
}

}  // namespace pflsim::data
