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
#include <random>
#include <string_view>

namespace pflsim {

// Independent random streams. Streams never share draws, so e.g. turning the
// DP mechanism on does not perturb cohort sampling.
enum class SeedStream : std::uint64_t {
  kData = 1,
  kSampling = 2,
  kLocalTraining = 3,
  kNoise = 4,
  kInit = 5,
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t hash_string(std::string_view s);

// Seed for (global seed, stream, iteration, key). Depends on nothing else, in
// particular not on which worker processes the key.
std::uint64_t derive_seed(std::uint64_t global_seed, SeedStream stream,
                          std::uint64_t iteration, std::uint64_t key = 0);
std::uint64_t derive_seed(std::uint64_t global_seed, SeedStream stream,
                          std::uint64_t iteration, std::string_view key);

using Rng = std::mt19937_64;

}  // namespace pflsim
