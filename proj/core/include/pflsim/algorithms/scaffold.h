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

#include <map>
#include <string>

#include "pflsim/algorithms/fedavg.h"

namespace pflsim::algorithms {

inline constexpr std::string_view kModelPrefix = "model/";
inline constexpr std::string_view kControlPrefix = "control/";

// SCAFFOLD with option-II control updates. Each local step follows
// g - c_i + c; afterwards c_i+ = c_i - c + (theta_t - theta') / (K * lr).
// A user's statistics carry the model delta under "model/<name>" and the
// control delta c_i+ - c_i under "control/<name>".
class Scaffold : public FedAvg {
 public:
  Scaffold(const models::Model& model, models::CentralOptimizer optimizer, FedAvgConfig config,
           std::size_t population_size);

  std::string name() const override { return "scaffold"; }
  UserResult simulate_one_user(const models::ModelParams& params, const data::UserDataset& user,
                               const CentralContext& context) const override;
  models::ModelParams process_aggregated_statistics_all_contexts(
      std::span<const ContextResult> results, const models::ModelParams& params,
      Metrics& metrics) override;

  const NamedVectors& server_control() const { return server_control_; }
  // Zero-initialized on first participation.
  NamedVectors user_control(const std::string& user_id, const models::ModelParams& like) const;
  std::size_t num_user_controls() const { return user_controls_.size(); }

 private:
  std::size_t population_size_;
  NamedVectors server_control_;
  std::map<std::string, NamedVectors> user_controls_;
};

}  // namespace pflsim::algorithms
