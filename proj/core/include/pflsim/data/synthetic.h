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
#include <cstdint>

#include "pflsim/data/dataset.h"

namespace pflsim::data {

struct SyntheticSpec {
  std::size_t num_points = 0;
  std::size_t dim = 2;
  int num_classes = 2;
  double margin = 6.0;  // minimum distance between class centers
  std::uint64_t seed = 0;
};

// Isotropic unit-variance Gaussian clusters, one per class. Centers are
// drawn and then rescaled so the closest pair is exactly `margin` apart.
// Class counts differ by at most one; rows come out shuffled.
LabeledData make_synthetic_classification(const SyntheticSpec& spec);

}  // namespace pflsim::data
