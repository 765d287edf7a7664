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

#include "pflsim/privacy/config.h"

#include <cmath>
#include <limits>
#include <string>

#include "pflsim/core/error.h"
#include "pflsim/privacy/mechanisms.h"

namespace pflsim::privacy {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
}

}  // namespace

std::string_view mechanism_name(Mechanism m) {
  switch (m) {
    case Mechanism::kNone: return "none";
    case Mechanism::kGaussianCentral: return "gaussian";
    case Mechanism::kLaplaceCentral: return "laplace";
    case Mechanism::kGaussianLocalApprox: return "gaussian_local_approx";
  }
  return "none";
}

Mechanism parse_mechanism(std::string_view name) {
  for (Mechanism m : {Mechanism::kNone, Mechanism::kGaussianCentral, Mechanism::kLaplaceCentral,
                      Mechanism::kGaussianLocalApprox}) {
    if (mechanism_name(m) == name) return m;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown mechanism '" + std::string(name) + "'");
}

double PrivacyConfig::effective_delta() const {
  return delta ? *delta : 1.0 / static_cast<double>(population);
}

double PrivacyConfig::sampling_rate() const {
  return static_cast<double>(noise_cohort_size) / static_cast<double>(population);
}

double PrivacyConfig::noise_scale_ratio() const {
  return ::pflsim::privacy::noise_scale_ratio(cohort_size, noise_cohort_size);
}

void PrivacyConfig::validate() const {
  if (mechanism == Mechanism::kNone) return;
  require(population >= 1, "population must be >= 1");
  require(cohort_size >= 1, "cohort size must be >= 1");
  require(noise_cohort_size >= 1, "noise cohort size must be >= 1");
  require(noise_cohort_size <= population, "noise cohort size must not exceed the population");
  require(clip_bound > 0.0 && std::isfinite(clip_bound), "clipping bound must be > 0");
  require(total_iterations >= 1, "total iterations must be >= 1");
  const double d = effective_delta();
  require(d > 0.0 && d < 1.0, "delta must be in (0, 1)");
  if (mechanism == Mechanism::kGaussianLocalApprox) {
    require(local_noise_std >= 0.0 && std::isfinite(local_noise_std), "local noise std must be >= 0");
  } else if (noise_multiplier) {
    require(*noise_multiplier >= 0.0 && std::isfinite(*noise_multiplier),
            "noise multiplier must be >= 0");
  } else {
    require(epsilon > 0.0, "epsilon must be > 0");
  }
  if (adaptive_clip) {
    require(adaptive_clip->quantile > 0.0 && adaptive_clip->quantile < 1.0,
            "adaptive clipping quantile must be in (0, 1)");
    require(adaptive_clip->learning_rate > 0.0, "adaptive clipping lr must be > 0");
    require(adaptive_clip->count_noise_std >= 0.0, "adaptive clipping noise std must be >= 0");
  }
}

PrivacyPipeline build_privacy_pipeline(const PrivacyConfig& config) {
  config.validate();
  PrivacyPipeline out;
  if (config.mechanism == Mechanism::kNone) return out;

  out.clip_bound = std::make_shared<ClipBound>(ClipBound{config.clip_bound});
  const NormKind norm = config.mechanism == Mechanism::kLaplaceCentral ? NormKind::kL1 : NormKind::kL2;
  std::optional<AdaptiveClipping> adaptive = config.adaptive_clip;
  if (adaptive) adaptive->noise_seed = config.noise_seed;
  out.postprocessors.push_back(std::make_shared<ClipPostprocessor>(out.clip_bound, norm, adaptive));
  out.noise_scale_ratio = config.noise_scale_ratio();

  switch (config.mechanism) {
    case Mechanism::kGaussianCentral: {
      const double q = config.sampling_rate();
      const double delta = config.effective_delta();
      if (config.noise_multiplier) {
        out.accountant = rdp_account(*config.noise_multiplier, q, config.total_iterations, delta);
      } else {
        out.accountant = calibrate_sigma(config.epsilon, delta, q, config.total_iterations);
      }
      out.postprocessors.push_back(std::make_shared<GaussianMechanism>(
          out.clip_bound, out.accountant->sigma, out.noise_scale_ratio, config.noise_seed));
      break;
    }
    case Mechanism::kLaplaceCentral:
      out.epsilon_per_query = config.epsilon / static_cast<double>(config.total_iterations);
      out.postprocessors.push_back(std::make_shared<LaplaceMechanism>(
          out.clip_bound, out.epsilon_per_query, out.noise_scale_ratio, config.noise_seed));
      break;
    case Mechanism::kGaussianLocalApprox:
      out.postprocessors.push_back(
          std::make_shared<GaussianLocalApproximation>(config.local_noise_std, config.noise_seed));
      break;
    case Mechanism::kNone:
      break;
  }
  engine::validate_pipeline(out.postprocessors);
  return out;
}

}  // namespace pflsim::privacy
