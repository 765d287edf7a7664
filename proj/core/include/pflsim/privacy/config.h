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
#include <memory>
#include <optional>
#include <string_view>

#include "pflsim/engine/postprocessor.h"
#include "pflsim/privacy/accountant.h"
#include "pflsim/privacy/postprocessors.h"

namespace pflsim::privacy {

enum class Mechanism { kNone, kGaussianCentral, kLaplaceCentral, kGaussianLocalApprox };

std::string_view mechanism_name(Mechanism m);
// Accepts none, gaussian, laplace, gaussian_local_approx.
Mechanism parse_mechanism(std::string_view name);

struct PrivacyConfig {
  Mechanism mechanism = Mechanism::kNone;
  double epsilon = 2.0;
  std::optional<double> delta;  // 1 / population when unset
  std::int64_t population = 1000000;
  std::int64_t cohort_size = 1;
  std::int64_t noise_cohort_size = 1;
  double clip_bound = 1.0;
  std::int64_t total_iterations = 1;
  std::optional<AdaptiveClipping> adaptive_clip;
  // Skips calibration when set (Gaussian central only).
  std::optional<double> noise_multiplier;
  // Per-user std for kGaussianLocalApprox.
  double local_noise_std = 0.0;
  std::uint64_t noise_seed = 0;

  double effective_delta() const;
  // q = noise_cohort / population, the Poisson rate assumed by accounting.
  double sampling_rate() const;
  // r = cohort / noise_cohort.
  double noise_scale_ratio() const;
  // Throws kInvalidArgument naming the first bad field.
  void validate() const;
};

struct PrivacyPipeline {
  engine::PostprocessorList postprocessors;
  std::shared_ptr<ClipBound> clip_bound;  // null without a mechanism
  std::optional<AccountantResult> accountant;
  double noise_scale_ratio = 1.0;
  double epsilon_per_query = 0.0;  // Laplace only
};

// Builds [clip, mechanism]. For the central Gaussian the noise multiplier is
// calibrated for (epsilon, delta) over total_iterations steps at rate q,
// unless given explicitly, in which case the achieved epsilon is reported.
// Laplace splits epsilon evenly over the iterations.
PrivacyPipeline build_privacy_pipeline(const PrivacyConfig& config);

}  // namespace pflsim::privacy
