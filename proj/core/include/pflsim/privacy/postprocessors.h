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

#include "pflsim/engine/postprocessor.h"

namespace pflsim::privacy {

// The live clipping bound shared by the clip and the mechanism of one
// pipeline. Read concurrently during an iteration, updated only on the
// server side after the mechanism has used it.
struct ClipBound {
  double value = 1.0;
};

enum class NormKind { kL2, kL1 };

struct AdaptiveClipping {
  double quantile = 0.5;  // target fraction of clipped users
  double learning_rate = 0.2;
  // Std of Gaussian noise added to the clipped-user count before it is
  // turned into a fraction. Zero leaves the fraction unprivatized.
  double count_noise_std = 0.0;
  std::uint64_t noise_seed = 0;
};

class ClipPostprocessor final : public engine::Postprocessor {
 public:
  ClipPostprocessor(std::shared_ptr<ClipBound> bound, NormKind norm = NormKind::kL2,
                    std::optional<AdaptiveClipping> adaptive = std::nullopt);

  std::string name() const override { return "clip"; }
  Role role() const override { return Role::kClip; }
  void postprocess_one_user(Statistics& statistics, const engine::UserPostprocessContext& ctx,
                            Metrics& user_metrics) const override;
  void postprocess_server(Statistics& aggregate, engine::ServerPostprocessContext& ctx) override;

  double bound() const { return bound_->value; }

 private:
  std::shared_ptr<ClipBound> bound_;
  NormKind norm_;
  std::optional<AdaptiveClipping> adaptive_;
};

// Central Gaussian noise on the summed aggregate with std r * sigma * S,
// where S is the live clip bound. Also reports the noise std and the SNR of
// the un-noised aggregate.
class GaussianMechanism final : public engine::Postprocessor {
 public:
  GaussianMechanism(std::shared_ptr<const ClipBound> bound, double noise_multiplier,
                    double noise_scale_ratio, std::uint64_t noise_seed);

  std::string name() const override { return "gaussian"; }
  Role role() const override { return Role::kMechanism; }
  void postprocess_server(Statistics& aggregate, engine::ServerPostprocessContext& ctx) override;

  double noise_multiplier() const { return sigma_; }

 private:
  std::shared_ptr<const ClipBound> bound_;
  double sigma_;
  double ratio_;
  std::uint64_t seed_;
};

// Central Laplace noise with scale r * S1 / epsilon_per_query.
class LaplaceMechanism final : public engine::Postprocessor {
 public:
  LaplaceMechanism(std::shared_ptr<const ClipBound> l1_bound, double epsilon_per_query,
                   double noise_scale_ratio, std::uint64_t noise_seed);

  std::string name() const override { return "laplace"; }
  Role role() const override { return Role::kMechanism; }
  void postprocess_server(Statistics& aggregate, engine::ServerPostprocessContext& ctx) override;

 private:
  std::shared_ptr<const ClipBound> bound_;
  double epsilon_per_query_;
  double ratio_;
  std::uint64_t seed_;
};

// Simulates per-user Gaussian noise of std local_std with one central draw of
// std local_std * sqrt(number of contributors).
class GaussianLocalApproximation final : public engine::Postprocessor {
 public:
  GaussianLocalApproximation(double local_std, std::uint64_t noise_seed);

  std::string name() const override { return "gaussian_local_approx"; }
  Role role() const override { return Role::kMechanism; }
  void postprocess_server(Statistics& aggregate, engine::ServerPostprocessContext& ctx) override;

 private:
  double local_std_;
  std::uint64_t seed_;
};

// Reference for the approximation above: noise added to every user.
class GaussianLocalMechanism final : public engine::Postprocessor {
 public:
  GaussianLocalMechanism(double local_std, std::uint64_t noise_seed);

  std::string name() const override { return "gaussian_local"; }
  Role role() const override { return Role::kMechanism; }
  void postprocess_one_user(Statistics& statistics, const engine::UserPostprocessContext& ctx,
                            Metrics& user_metrics) const override;

 private:
  double local_std_;
  std::uint64_t seed_;
};

}  // namespace pflsim::privacy
