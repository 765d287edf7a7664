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

#include <filesystem>

#include "pflsim/data/dataset.h"

namespace pflsim::data {

// Partition file: header `user_id,f0,...,f{d-1},label`, one row per point.
void save_partition_csv(const FederatedDataset& dataset, const std::filesystem::path& path);
FederatedDataset load_partition_csv(const std::filesystem::path& path,
                                    Population population = Population::kTrain);

}  // namespace pflsim::data
