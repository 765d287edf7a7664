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

#include "pflsim/cli/bench.h"

#include <cmath>
#include <map>
#include <random>
#include <string>

#include "pflsim/core/error.h"
#include "pflsim/core/seeding.h"
#include "pflsim/data/dataset.h"
#include "pflsim/engine/callbacks.h"
#include "pflsim/engine/scheduling.h"

namespace pflsim::cli {

namespace {

double straggler(const engine::WorkerAssignment& a, const std::map<std::string, double>& duration) {
  std::vector<double> per_worker;
  per_worker.reserve(a.users.size());
  for (const auto& queue : a.users) {
    double total = 0.0;
    for (const auto& id : queue) total += duration.at(id);
    per_worker.push_back(total);
  }
  return engine::max_straggler_time(per_worker);
}

}  // namespace

std::vector<BenchScheduleRow> bench_schedule(const BenchScheduleSpec& spec) {
  if (spec.trials < 1) throw Error(ErrorCode::kInvalidArgument, "trials must be >= 1");
  if (spec.cohort_size < 1) throw Error(ErrorCode::kInvalidArgument, "cohort size must be >= 1");
  if (!(spec.lognormal_sigma >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "sigma must be >= 0");
  const double overhead = spec.overhead < 0.0 ? std::exp(spec.lognormal_mu) : spec.overhead;

  std::vector<BenchScheduleRow> rows;
  for (const std::int64_t m : spec.workers) {
    if (m < 1) throw Error(ErrorCode::kInvalidArgument, "worker counts must be >= 1");
    BenchScheduleRow row;
    row.workers = m;
    for (std::int64_t t = 0; t < spec.trials; ++t) {
      // Same cohorts for every m and policy.
      Rng rng(derive_seed(spec.seed, SeedStream::kSampling, static_cast<std::uint64_t>(t), "bench_schedule"));
      std::lognormal_distribution<double> dist(spec.lognormal_mu, spec.lognormal_sigma);
      std::vector<engine::WeightedUser> users;
      std::vector<double> weights;
      std::map<std::string, double> duration;
      for (std::int64_t i = 0; i < spec.cohort_size; ++i) {
        const double w = std::max(1.0, std::round(dist(rng)));
        users.push_back({data::make_user_id(static_cast<std::size_t>(i)), w});
        weights.push_back(w);
        duration[users.back().user_id] = w + overhead;
      }
      const auto workers = static_cast<std::size_t>(m);
      const double base = engine::compute_base_weight(weights, engine::BaseWeightPolicy::median());
      row.no_scheduling += straggler(engine::schedule_round_robin(users, workers), duration);
      row.greedy += straggler(engine::schedule_users(users, workers, 0.0), duration);
      row.greedy_median += straggler(engine::schedule_users(users, workers, base), duration);
    }
    const auto n = static_cast<double>(spec.trials);
    row.no_scheduling /= n;
    row.greedy /= n;
    row.greedy_median /= n;
    rows.push_back(row);
  }
  return rows;
}

void write_bench_csv(const std::vector<BenchScheduleRow>& rows, std::ostream& out) {
  out << "workers,no_scheduling,greedy,greedy_median\n";
  for (const auto& r : rows) {
    out << r.workers << ',' << engine::format_double(r.no_scheduling) << ','
        << engine::format_double(r.greedy) << ',' << engine::format_double(r.greedy_median) << '\n';
  }
}

}  // namespace pflsim::cli
