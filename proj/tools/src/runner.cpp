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

#include "pflsim/cli/runner.h"

#include <chrono>
#include <fstream>

#include "json.hpp"

#include "pflsim/algorithms/fedavg.h"
#include "pflsim/algorithms/fedprox.h"
#include "pflsim/algorithms/scaffold.h"
#include "pflsim/core/error.h"
#include "pflsim/core/seeding.h"
#include "pflsim/data/csv_io.h"
#include "pflsim/data/partition.h"
#include "pflsim/data/synthetic.h"
#include "pflsim/engine/callbacks.h"
#include "pflsim/models/checkpoint.h"

namespace pflsim::cli {

namespace {

using json = nlohmann::ordered_json;

// Prints a one-line summary whenever central metrics were produced.
class ProgressLog final : public engine::Callback {
 public:
  ProgressLog(std::ostream& out, std::int64_t total) : out_(out), total_(total) {}
  bool after_central_iteration(const models::ModelParams&, engine::IterationMetrics& metrics,
                               std::int64_t iteration) override {
    const auto it = metrics.find("central");
    if (it == metrics.end() || !it->second.contains("accuracy")) return false;
    out_ << "iteration " << iteration + 1 << "/" << total_ << "  central accuracy "
         << it->second.value("accuracy") << "  loss " << it->second.value("loss") << '\n';
    return false;
  }

 private:
  std::ostream& out_;
  std::int64_t total_;
};

std::string_view scheduling_name(engine::SchedulingPolicy p) {
  return p == engine::SchedulingPolicy::kGreedy ? "greedy" : "none";
}

json base_weight_json(const engine::BaseWeightPolicy& b) {
  switch (b.kind) {
    case engine::BaseWeightPolicy::Kind::kZero: return "zero";
    case engine::BaseWeightPolicy::Kind::kMedian: return "median";
    case engine::BaseWeightPolicy::Kind::kFixed: return b.value;
  }
  return nullptr;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json metrics_json(const engine::IterationMetrics& metrics) {
  json out = json::object();
  for (const auto& [population, m] : metrics) {
    json pop = json::object();
    for (const auto& [name, value] : m.values()) pop[name] = number_or_null(value.value());
    out[population] = std::move(pop);
  }
  return out;
}

json build_metadata(const RunConfig& config, const Datasets& datasets, const RunOutcome& outcome,
                    const privacy::PrivacyPipeline& pipeline, double total_seconds) {
  json meta;
  meta["tool"] = "pflsim";
  meta["format_version"] = 1;
  json cfg = json::object();
  for (const auto& [k, v] : config.resolved) cfg[k] = v;
  meta["config"] = std::move(cfg);

  meta["data"] = {
      {"train_users", datasets.train.num_users()},
      {"train_points", datasets.train.total_points()},
      {"dropped_points", datasets.train.dropped_points},
      {"val_users", datasets.val ? datasets.val->num_users() : 0},
      {"central_eval_points", datasets.central_eval.size()},
      {"dim", datasets.dim},
      {"num_classes", datasets.num_classes},
  };

  json algo = json::object();
  algo["name"] = meta["config"]["algorithm.name"];
  algo["weighting"] = config.algorithm.weighting == Weighting::kUniform ? "user" : "datapoints";
  if (config.algorithm.kind == AlgorithmKind::kScaffold) algo["control_update"] = "option II";
  meta["algorithm"] = std::move(algo);

  const privacy::PrivacyConfig& p = config.privacy;
  json priv = {{"mechanism", privacy::mechanism_name(p.mechanism)}};
  if (p.mechanism != privacy::Mechanism::kNone) {
    priv["clip_bound"] = p.clip_bound;
    priv["noise_scale_ratio"] = pipeline.noise_scale_ratio;
    priv["population"] = p.population;
    priv["noise_cohort_size"] = p.noise_cohort_size;
    priv["delta"] = p.effective_delta();
    priv["target_epsilon"] = p.epsilon;
    priv["adaptive_clipping"] = p.adaptive_clip.has_value();
    if (p.adaptive_clip) {
      priv["adaptive_clipping_privatized"] = p.adaptive_clip->count_noise_std > 0.0;
      priv["final_clip_bound"] = pipeline.clip_bound->value;
    }
  }
  if (outcome.accountant) {
    priv["accountant"] = "rdp";
    priv["sigma"] = outcome.accountant->sigma;
    priv["achieved_epsilon"] = number_or_null(outcome.accountant->epsilon);
    priv["alpha"] = outcome.accountant->alpha;
    priv["sampling_rate"] = p.sampling_rate();
    priv["accounting_sampling"] = "poisson";
    priv["simulation_sampling"] =
        config.engine.sampling == data::CohortMode::Kind::kPoisson ? "poisson" : "fixed";
  }
  if (p.mechanism == privacy::Mechanism::kLaplaceCentral) priv["epsilon_per_query"] = pipeline.epsilon_per_query;
  if (p.mechanism == privacy::Mechanism::kGaussianLocalApprox) priv["local_noise_std"] = p.local_noise_std;
  meta["privacy"] = std::move(priv);

  meta["scheduler"] = {
      {"policy", scheduling_name(config.engine.scheduling)},
      {"base_weight", base_weight_json(config.engine.base)},
      {"num_workers", config.engine.num_workers},
  };

  json iterations = json::array();
  for (const auto& rec : outcome.simulation.history) {
    json contexts = json::array();
    for (const auto& c : rec.contexts) {
      contexts.push_back({
          {"population", population_name(c.population)},
          {"cohort", c.cohort},
          {"worker_loads", c.worker_loads},
          {"worker_seconds", c.worker_seconds},
          {"max_straggler_seconds", c.max_straggler_seconds},
      });
    }
    iterations.push_back({{"iteration", rec.iteration}, {"wall_seconds", rec.wall_seconds},
                          {"contexts", std::move(contexts)}});
  }
  meta["iterations_run"] = outcome.simulation.iterations_run;
  meta["total_seconds"] = total_seconds;
  if (!outcome.simulation.history.empty()) {
    meta["final_metrics"] = metrics_json(outcome.simulation.history.back().metrics);
  }
  meta["iterations"] = std::move(iterations);
  return meta;
}

}  // namespace

int exit_code(Phase phase) {
  switch (phase) {
    case Phase::kConfig: return 2;
    case Phase::kData: return 3;
    case Phase::kRuntime: return 4;
  }
  return 4;
}

Datasets build_datasets(const RunConfig& config) {
  const DataSpec& d = config.data;
  const std::uint64_t seed = config.engine.seed;
  Datasets out;
  if (d.source == DataSource::kCsv) {
    out.train = data::load_partition_csv(d.train_path, Population::kTrain);
    if (!d.val_path.empty()) {
      out.val = data::load_partition_csv(d.val_path, Population::kVal);
      out.central_eval = out.val->pooled();
    }
    const data::LabeledData pooled = out.train.pooled();
    out.dim = pooled.dim;
    out.num_classes = std::max(pooled.num_classes(), out.central_eval.num_classes());
    return out;
  }

  const auto ppu = static_cast<std::size_t>(d.points_per_user);
  const auto train_points = static_cast<std::size_t>(d.num_users) * ppu;
  const auto val_points = static_cast<std::size_t>(d.val_users) * ppu;
  data::SyntheticSpec spec;
  spec.num_points = train_points + val_points + static_cast<std::size_t>(d.central_eval_points);
  spec.dim = static_cast<std::size_t>(d.dim);
  spec.num_classes = static_cast<int>(d.num_classes);
  spec.margin = d.margin;
  spec.seed = derive_seed(seed, SeedStream::kData, 0, "synthetic");
  const data::LabeledData all = data::make_synthetic_classification(spec);

  auto slice = [&](std::size_t begin, std::size_t count) {
    std::vector<std::size_t> idx(count);
    for (std::size_t i = 0; i < count; ++i) idx[i] = begin + i;
    return all.subset(idx);
  };
  const data::LabeledData train = slice(0, train_points);
  const std::uint64_t part_seed = derive_seed(seed, SeedStream::kData, 0, "partition");
  out.train = d.partition == PartitionKind::kIid
                  ? data::partition_iid(train, ppu, part_seed, Population::kTrain)
                  : data::partition_dirichlet(train, static_cast<std::size_t>(d.num_users), ppu,
                                              d.dirichlet_alpha, part_seed, Population::kTrain);
  if (d.val_users > 0) {
    out.val = data::partition_iid(slice(train_points, val_points), ppu,
                                  derive_seed(seed, SeedStream::kData, 0, "partition/val"), Population::kVal);
  }
  out.central_eval = slice(train_points + val_points, static_cast<std::size_t>(d.central_eval_points));
  out.dim = spec.dim;
  out.num_classes = spec.num_classes;
  return out;
}

std::unique_ptr<models::Model> build_model(const RunConfig& config, std::size_t dim, int num_classes) {
  switch (config.model.kind) {
    case ModelKind::kLogistic:
      return std::make_unique<models::LogisticRegression>(dim, num_classes);
    case ModelKind::kMlp:
      return std::make_unique<models::Mlp>(dim, static_cast<std::size_t>(config.model.hidden), num_classes);
    case ModelKind::kQuadratic:
      return std::make_unique<models::QuadraticModel>(dim);
  }
  return nullptr;
}

models::CentralOptimizer build_central_optimizer(const RunConfig& config) {
  const CentralSpec& c = config.central;
  const HyperParam lr = c.lr_warmup > 0 ? HyperParam::linear_warmup(c.learning_rate, c.lr_warmup)
                                        : HyperParam(c.learning_rate);
  return c.optimizer == OptimizerKind::kAdam ? models::CentralOptimizer::adam(lr, c.adam)
                                             : models::CentralOptimizer::sgd(lr);
}

std::unique_ptr<algorithms::FederatedAlgorithm> build_algorithm(const RunConfig& config,
                                                                const models::Model& model,
                                                                const Datasets& datasets) {
  algorithms::FedAvgConfig f;
  f.iterations = config.engine.iterations;
  f.eval_frequency = datasets.val ? config.engine.eval_frequency : 0;
  f.cohort_size = config.engine.cohort_size;
  const auto val_users = datasets.val ? static_cast<std::int64_t>(datasets.val->num_users()) : 1;
  f.eval_cohort_size = config.engine.eval_cohort_size > 0 ? config.engine.eval_cohort_size : val_users;
  f.local_learning_rate = HyperParam(config.local.learning_rate);
  f.local_epochs = config.local.epochs;
  f.local_batch_size = config.local.batch_size;
  f.eval_batch_size = config.engine.eval_batch_size;
  f.weighting = config.algorithm.weighting;
  f.seed = config.engine.seed;

  models::CentralOptimizer opt = build_central_optimizer(config);
  switch (config.algorithm.kind) {
    case AlgorithmKind::kFedAvg:
      return std::make_unique<algorithms::FedAvg>(model, std::move(opt), f);
    case AlgorithmKind::kFedProx:
      return std::make_unique<algorithms::FedProx>(model, std::move(opt), f, config.algorithm.mu);
    case AlgorithmKind::kAdaFedProx:
      return std::make_unique<algorithms::AdaFedProx>(model, std::move(opt), f, config.algorithm.mu,
                                                      config.algorithm.mu_rule);
    case AlgorithmKind::kScaffold:
      return std::make_unique<algorithms::Scaffold>(model, std::move(opt), f, datasets.train.num_users());
  }
  return nullptr;
}

RunOutcome run_experiment(const RunConfig& config, const std::filesystem::path& out_dir,
                          std::ostream* log) {
  const auto start = std::chrono::steady_clock::now();
  Phase phase = Phase::kData;
  try {
    std::filesystem::create_directories(out_dir);
    const Datasets datasets = build_datasets(config);
    if (config.data.source == DataSource::kCsv &&
        config.engine.sampling == data::CohortMode::Kind::kFixedSize &&
        static_cast<std::size_t>(config.engine.cohort_size) > datasets.train.num_users()) {
      throw Error(ErrorCode::kCohortTooLarge, "engine.cohort_size exceeds the " +
                                                  std::to_string(datasets.train.num_users()) +
                                                  " users in " + config.data.train_path);
    }
    if (log && datasets.train.dropped_points > 0) {
      *log << "warning: " << datasets.train.dropped_points << " training points dropped by the partitioner\n";
    }

    phase = Phase::kRuntime;
    const std::unique_ptr<models::Model> model = build_model(config, datasets.dim, datasets.num_classes);
    const std::unique_ptr<algorithms::FederatedAlgorithm> algorithm = build_algorithm(config, *model, datasets);
    const privacy::PrivacyPipeline pipeline = privacy::build_privacy_pipeline(config.privacy);
    if (log && pipeline.accountant) {
      *log << "privacy: sigma " << pipeline.accountant->sigma << ", epsilon " << pipeline.accountant->epsilon
           << " at order " << pipeline.accountant->alpha << ", delta " << config.privacy.effective_delta() << '\n';
      if (config.engine.sampling == data::CohortMode::Kind::kFixedSize) {
        *log << "note: accounting assumes Poisson sampling at q = " << config.privacy.sampling_rate()
             << " while the simulation samples fixed-size cohorts\n";
      }
    }

    engine::BackendConfig bc;
    bc.num_workers = static_cast<std::size_t>(config.engine.num_workers);
    bc.scheduling = config.engine.scheduling;
    bc.base = config.engine.base;
    bc.cohort_mode = config.engine.sampling == data::CohortMode::Kind::kPoisson
                         ? data::CohortMode::poisson(std::min(
                               1.0, static_cast<double>(config.engine.cohort_size) /
                                        static_cast<double>(datasets.train.num_users())))
                         : data::CohortMode::fixed_size();
    bc.seed = config.engine.seed;
    engine::SimulatedBackend backend(datasets.train, datasets.val ? &*datasets.val : nullptr,
                                     pipeline.postprocessors, std::make_shared<engine::SumAggregator>(), bc);

    RunOutcome outcome;
    outcome.accountant = pipeline.accountant;
    outcome.metrics_path = out_dir / config.output.metrics;
    outcome.metadata_path = out_dir / config.output.metadata;
    outcome.checkpoint_path = out_dir / config.output.checkpoint;

    engine::CallbackList callbacks;
    if (!datasets.central_eval.empty()) {
      callbacks.push_back(std::make_shared<engine::CentralEvaluation>(
          *model, datasets.central_eval, config.engine.eval_frequency, config.engine.iterations - 1));
    }
    callbacks.push_back(std::make_shared<engine::CsvReporter>(outcome.metrics_path));
    if (log) callbacks.push_back(std::make_shared<ProgressLog>(*log, config.engine.iterations));

    const models::ModelParams initial = model->init_params(derive_seed(config.engine.seed, SeedStream::kInit, 0));
    outcome.simulation = engine::run_simulation(initial, *algorithm, backend, callbacks);
    models::save_checkpoint(outcome.simulation.final_params, outcome.checkpoint_path);

    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ofstream meta(outcome.metadata_path);
    if (!meta) throw Error(ErrorCode::kIo, "cannot write " + outcome.metadata_path.string());
    meta << build_metadata(config, datasets, outcome, pipeline, total).dump(2) << '\n';
    if (!meta) throw Error(ErrorCode::kIo, "failed writing " + outcome.metadata_path.string());
    return outcome;
  } catch (const Error& e) {
    throw PhaseError(e.code() == ErrorCode::kConfig ? Phase::kConfig : phase, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    throw PhaseError(Phase::kData, e.what());
  }
}

}  // namespace pflsim::cli
