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

#include "pflsim/privacy/mechanisms.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "pflsim/core/error.h"
#include "pflsim/core/seeding.h"

namespace pflsim::privacy {

namespace {

ClipResult clip_to(const Statistics& delta, double bound, double norm) {
  if (!(bound > 0.0)) throw Error(ErrorCode::kInvalidArgument, "clipping bound must be > 0");
  ClipResult r{delta, false, norm};
  if (norm > bound) {
    r.statistics.scale(bound / norm);
    r.clipped = true;
  }
  return r;
}

}  // namespace

double l1_norm(const Statistics& s) {
  double sum = 0.0;
  for (const auto& [name, values] : s.entries()) {
    for (double x : values) sum += std::abs(x);
  }
  return sum;
}

ClipResult clip_norm(const Statistics& delta, double bound) {
  return clip_to(delta, bound, delta.l2_norm());
}

ClipResult clip_l1_norm(const Statistics& delta, double bound) {
  return clip_to(delta, bound, l1_norm(delta));
}

void add_gaussian_noise(Statistics& s, double stddev, std::uint64_t seed) {
  if (!(stddev >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "noise std must be >= 0");
  if (stddev == 0.0) return;
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, stddev);
  for (auto& [name, values] : s.mutable_entries()) {
    for (double& x : values) x += normal(rng);
  }
}

void add_laplace_noise(Statistics& s, double scale, std::uint64_t seed) {
  if (!(scale >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "Laplace scale must be >= 0");
  if (scale == 0.0) return;
  Rng rng(seed);
  // Inverse CDF on u in (-1/2, 1/2).
  std::uniform_real_distribution<double> unit(-0.5, 0.5);
  for (auto& [name, values] : s.mutable_entries()) {
    for (double& x : values) {
      double u = unit(rng);
      while (u == -0.5) u = unit(rng);
      x -= scale * std::copysign(1.0, u) * std::log1p(-2.0 * std::abs(u));
    }
  }
}

double noise_scale_ratio(std::int64_t cohort_size, std::int64_t noise_cohort_size) {
  if (cohort_size < 1 || noise_cohort_size < 1) {
    throw Error(ErrorCode::kInvalidArgument, "cohort sizes must be >= 1");
  }
  return static_cast<double>(cohort_size) / static_cast<double>(noise_cohort_size);
}

Statistics gaussian_mechanism_central(const Statistics& aggregate, double clip_bound,
                                      double sigma, double r, std::uint64_t seed) {
  if (!(clip_bound > 0.0) || !(sigma >= 0.0) || !(r > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "Gaussian mechanism needs bound > 0, sigma >= 0, r > 0");
  }
  Statistics out = aggregate;
  add_gaussian_noise(out, r * sigma * clip_bound, seed);
  return out;
}

Statistics laplace_mechanism_central(const Statistics& aggregate, double l1_bound,
                                     double epsilon_per_query, std::uint64_t seed) {
  if (!(l1_bound > 0.0) || !(epsilon_per_query > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "Laplace mechanism needs bound > 0 and epsilon > 0");
  }
  Statistics out = aggregate;
  add_laplace_noise(out, std::isinf(epsilon_per_query) ? 0.0 : l1_bound / epsilon_per_query, seed);
  return out;
}

double adaptive_clip_update(double bound, double clipped_fraction, double quantile, double lr) {
  if (!(quantile > 0.0 && quantile < 1.0)) throw Error(ErrorCode::kInvalidArgument, "quantile must be in (0, 1)");
  if (!(lr > 0.0)) throw Error(ErrorCode::kInvalidArgument, "clip learning rate must be > 0");
  const double fraction = std::clamp(clipped_fraction, 0.0, 1.0);
  return std::clamp(bound * std::exp(-lr * (fraction - quantile)), 1e-6, 1e6);
}

double clt_local_approximation(double local_std, std::int64_t cohort_size) {
  if (!(local_std >= 0.0) || cohort_size < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need local std >= 0 and cohort >= 1");
  }
  return local_std * std::sqrt(static_cast<double>(cohort_size));
}

double snr(const Statistics& aggregate_delta, double sigma, std::size_t dimension) {
  if (!(sigma >= 0.0) || dimension < 1) {
    throw Error(ErrorCode::kInvalidArgument, "SNR needs sigma >= 0 and dimension >= 1");
  }
  const double signal = aggregate_delta.l2_norm();
  if (sigma == 0.0) {
    if (signal == 0.0) throw Error(ErrorCode::kUndefined, "SNR of a zero signal without noise");
    return std::numeric_limits<double>::infinity();
  }
  return signal / (sigma * std::sqrt(static_cast<double>(dimension)));
}

}  // namespace pflsim::privacy
