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

#include "pflsim/engine/callbacks.h"

#include <cmath>
#include <cstdio>

#include "pflsim/core/error.h"

namespace pflsim::engine {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CentralEvaluation::CentralEvaluation(const models::Model& model, data::LabeledData data,
                                     std::int64_t frequency, std::int64_t last_iteration)
    : model_(model), data_(std::move(data)), frequency_(frequency), last_iteration_(last_iteration) {}

bool CentralEvaluation::after_central_iteration(const models::ModelParams& params,
                                                IterationMetrics& metrics, std::int64_t iteration) {
  const bool due = (frequency_ > 0 && iteration % frequency_ == 0) || iteration == last_iteration_;
  if (!due || data_.empty()) return false;
  const models::EvalResult r = model_.evaluate(params, data_);
  const auto n = static_cast<double>(r.count);
  Metrics& m = metrics["central"];
  m.add("loss", MetricValue::central(r.loss_sum, n));
  m.add("accuracy", MetricValue::central(static_cast<double>(r.correct), n));
  return false;
}

CsvReporter::CsvReporter(const std::filesystem::path& path) : out_(path) {
  if (!out_) throw Error(ErrorCode::kIo, "cannot write metrics " + path.string());
  out_ << kHeader << '\n';
  out_.flush();
}

bool CsvReporter::after_central_iteration(const models::ModelParams&, IterationMetrics& metrics,
                                          std::int64_t iteration) {
  for (const auto& [population, m] : metrics) {
    for (const auto& [name, value] : m.values()) {
      out_ << iteration << ',' << population << ',' << name << ',' << format_double(value.value())
           << ',' << format_double(value.denominator) << '\n';
    }
  }
  out_.flush();
  if (!out_) throw Error(ErrorCode::kIo, "metrics write failed");
  return false;
}

}  // namespace pflsim::engine
