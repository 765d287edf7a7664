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
#include <string>
#include <vector>

#include "pflsim/data/dataset.h"

namespace pflsim::data {

struct CohortMode {
  enum class Kind { kFixedSize, kPoisson };
  Kind kind = Kind::kFixedSize;
  double q = 1.0;  // inclusion probability for kPoisson

  static CohortMode fixed_size() { return {}; }
  static CohortMode poisson(double q) { return {Kind::kPoisson, q}; }
};

// FixedSize: a uniform sample of exactly cohort_size distinct users, in draw
// order. Poisson: every user is kept independently with probability q, in
// user_id order (cohort_size is ignored).
std::vector<std::string> sample_cohort(const FederatedDataset& dataset, std::size_t cohort_size,
                                       std::uint64_t seed,
                                       CohortMode mode = CohortMode::fixed_size());

}  // namespace pflsim::data
