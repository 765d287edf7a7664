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

#include "pflsim/engine/simulation.h"

#include <chrono>

#include "pflsim/core/error.h"

namespace pflsim::engine {

SimulationResult run_simulation(models::ModelParams initial, algorithms::FederatedAlgorithm& algorithm,
                                SimulatedBackend& backend,
                                std::span<const std::shared_ptr<Callback>> callbacks) {
  SimulationResult result;
  result.final_params = std::move(initial);
  for (std::int64_t t = 0;; ++t) {
    const auto start = std::chrono::steady_clock::now();
    IterationRecord record;
    record.iteration = t;
    bool stop = false;
    try {
      const std::vector<CentralContext> contexts =
          algorithm.get_next_central_contexts(result.final_params, t);
      if (contexts.empty()) break;
      for (const auto& c : contexts) c.validate();

      std::vector<ContextRun> runs = backend.run_central_iteration(contexts, result.final_params, algorithm);
      std::vector<algorithms::ContextResult> results;
      results.reserve(runs.size());
      for (auto& run : runs) {
        ContextSummary summary;
        summary.population = run.result.context.population;
        summary.cohort = run.result.cohort;
        summary.worker_loads = run.worker_loads;
        summary.worker_seconds = run.worker_seconds;
        summary.max_straggler_seconds = max_straggler_time(run.worker_seconds);
        record.contexts.push_back(std::move(summary));
        record.metrics[std::string(population_name(run.result.context.population))].merge(run.result.metrics);
        results.push_back(std::move(run.result));
      }

      Metrics algorithm_metrics;
      result.final_params = algorithm.process_aggregated_statistics_all_contexts(
          results, result.final_params, algorithm_metrics);
      if (!algorithm_metrics.empty()) record.metrics["algorithm"].merge(algorithm_metrics);

      for (const auto& cb : callbacks) {
        stop = cb->after_central_iteration(result.final_params, record.metrics, t) || stop;
      }
    } catch (const Error& e) {
      throw Error(e.code(), "iteration " + std::to_string(t) + ": " + e.message());
    }
    record.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.history.push_back(std::move(record));
    ++result.iterations_run;
    if (stop) break;
  }
  return result;
}

}  // namespace pflsim::engine
