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

#include "pflsim/privacy/postprocessors.h"

#include <cmath>
#include <random>
#include <string>

#include "pflsim/core/error.h"
#include "pflsim/core/seeding.h"
#include "pflsim/privacy/mechanisms.h"

namespace pflsim::privacy {

namespace {

std::uint64_t server_noise_seed(std::uint64_t seed, std::string_view mechanism,
                                const CentralContext& context) {
  return derive_seed(seed, SeedStream::kNoise, static_cast<std::uint64_t>(context.iteration),
                     std::string(mechanism) + "/" + std::string(population_name(context.population)));
}

void report_noise(Statistics& aggregate, engine::ServerPostprocessContext& ctx, double stddev) {
  ctx.metrics.add("dp/noise_std", MetricValue::central(stddev, 1.0));
  const double signal = aggregate.l2_norm();
  if (stddev > 0.0 || signal > 0.0) {
    ctx.metrics.add("dp/snr", MetricValue::central(snr(aggregate, stddev, aggregate.dimension()), 1.0));
  }
}

}  // namespace

ClipPostprocessor::ClipPostprocessor(std::shared_ptr<ClipBound> bound, NormKind norm,
                                     std::optional<AdaptiveClipping> adaptive)
    : bound_(std::move(bound)), norm_(norm), adaptive_(adaptive) {
  if (!bound_ || !(bound_->value > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "clipping bound must be > 0");
  }
  if (adaptive_) {
    // Validates quantile and learning rate.
    adaptive_clip_update(bound_->value, adaptive_->quantile, adaptive_->quantile, adaptive_->learning_rate);
  }
}

void ClipPostprocessor::postprocess_one_user(Statistics& statistics,
                                             const engine::UserPostprocessContext&,
                                             Metrics& user_metrics) const {
  ClipResult r = norm_ == NormKind::kL2 ? clip_norm(statistics, bound_->value)
                                        : clip_l1_norm(statistics, bound_->value);
  statistics = std::move(r.statistics);
  user_metrics.add("dp/clipped_fraction", MetricValue::central(r.clipped ? 1.0 : 0.0, 1.0));
  user_metrics.add("dp/update_norm", MetricValue::central(r.original_norm, 1.0));
}

void ClipPostprocessor::postprocess_server(Statistics&, engine::ServerPostprocessContext& ctx) {
  ctx.metrics.add("dp/clip_bound", MetricValue::central(bound_->value, 1.0));
  if (!adaptive_ || !ctx.metrics.contains("dp/clipped_fraction")) return;
  const MetricValue& clipped = ctx.metrics.at("dp/clipped_fraction");
  double count = clipped.numerator;
  if (adaptive_->count_noise_std > 0.0) {
    Rng rng(server_noise_seed(adaptive_->noise_seed, "adaptive_clip", ctx.context));
    count += std::normal_distribution<double>(0.0, adaptive_->count_noise_std)(rng);
  }
  bound_->value = adaptive_clip_update(bound_->value, count / clipped.denominator,
                                       adaptive_->quantile, adaptive_->learning_rate);
}

GaussianMechanism::GaussianMechanism(std::shared_ptr<const ClipBound> bound, double noise_multiplier,
                                     double noise_scale_ratio, std::uint64_t noise_seed)
    : bound_(std::move(bound)), sigma_(noise_multiplier), ratio_(noise_scale_ratio), seed_(noise_seed) {
  if (!bound_) throw Error(ErrorCode::kInvalidArgument, "Gaussian mechanism needs a clip bound");
  if (!(sigma_ >= 0.0) || !(ratio_ > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "Gaussian mechanism needs sigma >= 0 and r > 0");
  }
}

void GaussianMechanism::postprocess_server(Statistics& aggregate, engine::ServerPostprocessContext& ctx) {
  const double stddev = ratio_ * sigma_ * bound_->value;
  report_noise(aggregate, ctx, stddev);
  aggregate = gaussian_mechanism_central(aggregate, bound_->value, sigma_, ratio_,
                                         server_noise_seed(seed_, name(), ctx.context));
}

LaplaceMechanism::LaplaceMechanism(std::shared_ptr<const ClipBound> l1_bound, double epsilon_per_query,
                                   double noise_scale_ratio, std::uint64_t noise_seed)
    : bound_(std::move(l1_bound)), epsilon_per_query_(epsilon_per_query), ratio_(noise_scale_ratio),
      seed_(noise_seed) {
  if (!bound_) throw Error(ErrorCode::kInvalidArgument, "Laplace mechanism needs a clip bound");
  if (!(epsilon_per_query_ > 0.0) || !(ratio_ > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "Laplace mechanism needs epsilon > 0 and r > 0");
  }
}

void LaplaceMechanism::postprocess_server(Statistics& aggregate, engine::ServerPostprocessContext& ctx) {
  const double scale = std::isinf(epsilon_per_query_) ? 0.0 : ratio_ * bound_->value / epsilon_per_query_;
  report_noise(aggregate, ctx, std::sqrt(2.0) * scale);
  add_laplace_noise(aggregate, scale, server_noise_seed(seed_, name(), ctx.context));
}

GaussianLocalApproximation::GaussianLocalApproximation(double local_std, std::uint64_t noise_seed)
    : local_std_(local_std), seed_(noise_seed) {
  if (!(local_std_ >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "local noise std must be >= 0");
}

void GaussianLocalApproximation::postprocess_server(Statistics& aggregate,
                                                    engine::ServerPostprocessContext& ctx) {
  if (ctx.num_contributors < 1) return;
  const double stddev = clt_local_approximation(local_std_, ctx.num_contributors);
  report_noise(aggregate, ctx, stddev);
  add_gaussian_noise(aggregate, stddev, server_noise_seed(seed_, name(), ctx.context));
}

GaussianLocalMechanism::GaussianLocalMechanism(double local_std, std::uint64_t noise_seed)
    : local_std_(local_std), seed_(noise_seed) {
  if (!(local_std_ >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "local noise std must be >= 0");
}

void GaussianLocalMechanism::postprocess_one_user(Statistics& statistics,
                                                  const engine::UserPostprocessContext& ctx,
                                                  Metrics&) const {
  add_gaussian_noise(statistics, local_std_,
                     derive_seed(seed_, SeedStream::kNoise, static_cast<std::uint64_t>(ctx.context.iteration),
                                 ctx.user_id));
}

}  // namespace pflsim::privacy
