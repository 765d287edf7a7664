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
#include <filesystem>
#include <fstream>
#include <map>
#include <string>

#include "pflsim/core/metrics.h"
#include "pflsim/data/dataset.h"
#include "pflsim/models/model.h"

namespace pflsim::engine {

// Metrics of one central iteration grouped by population label
// ("train", "val", "central", ...).
using IterationMetrics = std::map<std::string, Metrics>;

// Post-iteration hook. Sees the updated model read-only and may add
// reporting metrics; returning true stops training.
class Callback {
 public:
  virtual ~Callback() = default;
  virtual bool after_central_iteration(const models::ModelParams& model,
                                       IterationMetrics& metrics, std::int64_t iteration) = 0;
};

// Stops once `iteration` has completed.
class StopAtIteration final : public Callback {
 public:
  explicit StopAtIteration(std::int64_t iteration) : iteration_(iteration) {}
  bool after_central_iteration(const models::ModelParams&, IterationMetrics&,
                               std::int64_t iteration) override {
    return iteration >= iteration_;
  }

 private:
  std::int64_t iteration_;
};

// Evaluates the model on a held-out pooled dataset every `frequency`
// iterations and on the final one; reports under population "central".
class CentralEvaluation final : public Callback {
 public:
  CentralEvaluation(const models::Model& model, data::LabeledData data, std::int64_t frequency,
                    std::int64_t last_iteration);
  bool after_central_iteration(const models::ModelParams& params, IterationMetrics& metrics,
                               std::int64_t iteration) override;

 private:
  const models::Model& model_;
  data::LabeledData data_;
  std::int64_t frequency_;
  std::int64_t last_iteration_;
};

// Appends `iteration,population,metric,value,weight` rows and flushes after
// every iteration, so an interrupted run leaves a valid prefix.
class CsvReporter final : public Callback {
 public:
  static constexpr const char* kHeader = "iteration,population,metric,value,weight";

  explicit CsvReporter(const std::filesystem::path& path);
  bool after_central_iteration(const models::ModelParams& params, IterationMetrics& metrics,
                               std::int64_t iteration) override;

 private:
  std::ofstream out_;
};

std::string format_double(double v);

}  // namespace pflsim::engine
