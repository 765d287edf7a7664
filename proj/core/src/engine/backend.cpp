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

#include "pflsim/engine/backend.h"

#include <chrono>
#include <exception>
#include <thread>

#include "pflsim/core/error.h"
#include "pflsim/core/seeding.h"

namespace pflsim::engine {

namespace {

struct WorkerOutput {
  Aggregator::State state;
  Metrics metrics;
  std::map<std::string, NamedVectors> user_states;
  std::int64_t contributors = 0;
  double seconds = 0.0;
  std::exception_ptr error;
};

std::string provenance(const CentralContext& context, const std::string& user_id) {
  return "context " + std::string(population_name(context.population)) + ", user " + user_id + ": ";
}

}  // namespace

SimulatedBackend::SimulatedBackend(const data::FederatedDataset& train,
                                   const data::FederatedDataset* val,
                                   PostprocessorList postprocessors,
                                   std::shared_ptr<const Aggregator> aggregator,
                                   BackendConfig config)
    : train_(train),
      val_(val),
      postprocessors_(std::move(postprocessors)),
      aggregator_(std::move(aggregator)),
      config_(config) {
  if (config_.num_workers < 1) throw Error(ErrorCode::kInvalidArgument, "need at least one worker");
  if (!aggregator_) aggregator_ = std::make_shared<SumAggregator>();
  validate_pipeline(postprocessors_);
}

const data::FederatedDataset& SimulatedBackend::dataset_for(Population population) const {
  if (population == Population::kTrain) return train_;
  if (!val_) throw Error(ErrorCode::kInvalidArgument, "no validation population configured");
  return *val_;
}

std::vector<std::string> SimulatedBackend::sample(const CentralContext& context) const {
  const std::uint64_t seed = derive_seed(config_.seed, SeedStream::kSampling,
                                         static_cast<std::uint64_t>(context.iteration),
                                         population_name(context.population));
  return data::sample_cohort(dataset_for(context.population),
                             static_cast<std::size_t>(context.cohort_size), seed, config_.cohort_mode);
}

ContextRun SimulatedBackend::run_context(const algorithms::FederatedAlgorithm& algorithm,
                                         const models::ModelParams& params,
                                         const CentralContext& context) {
  const data::FederatedDataset& dataset = dataset_for(context.population);
  ContextRun run;
  run.result.context = context;
  run.result.cohort = sample(context);

  std::vector<WeightedUser> weighted;
  std::vector<double> weights;
  weighted.reserve(run.result.cohort.size());
  for (const auto& id : run.result.cohort) {
    weighted.push_back({id, dataset.user(id).weight()});
    weights.push_back(weighted.back().weight);
  }
  const double base = weights.empty() ? 0.0 : compute_base_weight(weights, config_.base);
  const WorkerAssignment assignment =
      config_.scheduling == SchedulingPolicy::kGreedy
          ? schedule_users(weighted, config_.num_workers, base)
          : schedule_round_robin(weighted, config_.num_workers, base);
  run.worker_loads = assignment.loads;

  std::vector<WorkerOutput> outputs(config_.num_workers);
  auto work = [&](std::size_t w) {
    WorkerOutput& out = outputs[w];
    out.state = aggregator_->zero();
    const auto start = std::chrono::steady_clock::now();
    std::string current;
    try {
      for (const auto& user_id : assignment.users[w]) {
        current = user_id;
        const data::UserDataset& user = dataset.user(user_id);
        algorithms::UserResult r = algorithm.simulate_one_user(params, user, context);
        if (r.statistics) {
          const UserPostprocessContext pctx{context, user_id, r.aux};
          for (const auto& p : postprocessors_) p->postprocess_one_user(*r.statistics, pctx, r.metrics);
          out.state = aggregator_->accumulate(std::move(out.state), *r.statistics);
          ++out.contributors;
        }
        if (r.user_state) out.user_states.emplace(user_id, std::move(*r.user_state));
        out.metrics.merge(r.metrics);
      }
    } catch (const Error& e) {
      out.error = std::make_exception_ptr(Error(e.code(), provenance(context, current) + e.message()));
    } catch (...) {
      out.error = std::current_exception();
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  if (config_.num_workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(config_.num_workers);
    for (std::size_t w = 0; w < config_.num_workers; ++w) threads.emplace_back(work, w);
  }

  std::vector<Aggregator::State> states;
  states.reserve(outputs.size());
  for (auto& out : outputs) {
    if (out.error) std::rethrow_exception(out.error);
    states.push_back(std::move(out.state));
    run.result.metrics.merge(out.metrics);
    run.result.user_states.merge(out.user_states);
    run.num_contributors += out.contributors;
    run.worker_seconds.push_back(out.seconds);
  }
  run.result.aggregate = aggregator_->worker_reduce(states);

  if (run.result.aggregate) {
    ServerPostprocessContext sctx{context, run.num_contributors, run.result.metrics};
    for (auto it = postprocessors_.rbegin(); it != postprocessors_.rend(); ++it) {
      (*it)->postprocess_server(*run.result.aggregate, sctx);
    }
  }
  return run;
}

std::vector<ContextRun> SimulatedBackend::run_central_iteration(
    std::span<const CentralContext> contexts, const models::ModelParams& params,
    const algorithms::FederatedAlgorithm& algorithm) {
  std::vector<ContextRun> runs;
  runs.reserve(contexts.size());
  for (const auto& context : contexts) runs.push_back(run_context(algorithm, params, context));
  return runs;
}

}  // namespace pflsim::engine
