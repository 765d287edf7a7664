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
#include <ostream>
#include <vector>

namespace pflsim::cli {

// Straggler benchmark. Each trial draws a cohort of lognormal user weights
// (datapoint counts). A user's simulated duration is its weight plus a fixed
// per-user overhead, so a worker's duration is the sum over its queue. The
// three policies differ only in how the queue is built:
//   no_scheduling  round-robin in cohort order
//   greedy         greedy balancing on the weight alone
//   greedy_median  greedy balancing on weight + cohort median weight
struct BenchScheduleSpec {
  std::int64_t cohort_size = 50;
  double lognormal_mu = 3.0;
  double lognormal_sigma = 1.0;
  // Per-user fixed cost in weight units. Negative: exp(mu), the median of
  // the weight distribution.
  double overhead = -1.0;
  std::vector<std::int64_t> workers = {1, 2, 4, 8};
  std::int64_t trials = 100;
  std::uint64_t seed = 0;
};

struct BenchScheduleRow {
  std::int64_t workers = 0;
  double no_scheduling = 0.0;  // mean max straggler time
  double greedy = 0.0;
  double greedy_median = 0.0;
};

std::vector<BenchScheduleRow> bench_schedule(const BenchScheduleSpec& spec);

// Header `workers,no_scheduling,greedy,greedy_median` then one row per m.
void write_bench_csv(const std::vector<BenchScheduleRow>& rows, std::ostream& out);

}  // namespace pflsim::cli
