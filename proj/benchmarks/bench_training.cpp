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

#include "pflsim/algorithms/fedavg.h"
#include "pflsim/data/partition.h"
#include "pflsim/data/synthetic.h"
#include "pflsim/engine/backend.h"
#include "pflsim/models/local_training.h"
#include "pflsim/models/model.h"

namespace {

pflsim::data::LabeledData synthetic(std::size_t n) {
  pflsim::data::SyntheticSpec spec;
  spec.num_points = n;
  spec.dim = 32;
  spec.num_classes = 10;
  spec.seed = 1;
  return pflsim::data::make_synthetic_classification(spec);
}

void BM_LocalTraining(benchmark::State& state) {
  const auto data = synthetic(50);
  const pflsim::models::LogisticRegression model(32, 10);
  const auto params = model.init_params(0);
  const pflsim::LocalParams local{0.1, 1, 10};
  for (auto _ : state) {
    benchmark::DoNotOptimize(pflsim::models::local_train_sgd(model, params, data, local, 3));
  }
}
BENCHMARK(BM_LocalTraining);

void BM_CentralIteration(benchmark::State& state) {
  const auto train = pflsim::data::partition_iid(synthetic(50000), 50, 2);
  const pflsim::models::LogisticRegression model(32, 10);
  pflsim::algorithms::FedAvgConfig config;
  config.iterations = 1 << 30;
  config.cohort_size = 50;
  pflsim::algorithms::FedAvg algo(model, pflsim::models::CentralOptimizer::sgd(1.0), config);
  pflsim::engine::BackendConfig bc;
  bc.num_workers = static_cast<std::size_t>(state.range(0));
  pflsim::engine::SimulatedBackend backend(train, nullptr, {}, nullptr, bc);
  auto params = model.init_params(0);
  std::int64_t t = 0;
  for (auto _ : state) {
    const auto contexts = algo.get_next_central_contexts(params, t);
    auto runs = backend.run_central_iteration(contexts, params, algo);
    std::vector<pflsim::algorithms::ContextResult> results;
    for (auto& r : runs) results.push_back(std::move(r.result));
    pflsim::Metrics m;
    params = algo.process_aggregated_statistics_all_contexts(results, params, m);
    ++t;
  }
}
BENCHMARK(BM_CentralIteration)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace
