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

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "pflsim/data/dataset.h"
#include "pflsim/engine/scheduling.h"

namespace {

std::vector<pflsim::engine::WeightedUser> cohort(std::size_t n) {
  std::mt19937_64 rng(1);
  std::lognormal_distribution<double> w(3.0, 1.0);
  std::vector<pflsim::engine::WeightedUser> users;
  for (std::size_t i = 0; i < n; ++i) users.push_back({pflsim::data::make_user_id(i), std::max(1.0, std::round(w(rng)))});
  return users;
}

void BM_ScheduleGreedy(benchmark::State& state) {
  const auto users = cohort(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pflsim::engine::schedule_users(users, static_cast<std::size_t>(state.range(1)), 20.0));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ScheduleGreedy)->Args({50, 4})->Args({400, 8})->Args({5000, 16});

void BM_ScheduleRoundRobin(benchmark::State& state) {
  const auto users = cohort(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pflsim::engine::schedule_round_robin(users, 8));
  }
}
BENCHMARK(BM_ScheduleRoundRobin)->Arg(400);

}  // namespace
