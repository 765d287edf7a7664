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

#include "pflsim/core/statistics.h"

namespace pflsim::privacy {

struct ClipResult {
  Statistics statistics;
  bool clipped = false;
  double original_norm = 0.0;
};

// Scales every entry by bound / norm when the global norm exceeds the bound.
// The weight is never touched.
ClipResult clip_norm(const Statistics& delta, double bound);
ClipResult clip_l1_norm(const Statistics& delta, double bound);
double l1_norm(const Statistics& s);

void add_gaussian_noise(Statistics& s, double stddev, std::uint64_t seed);
void add_laplace_noise(Statistics& s, double scale, std::uint64_t seed);

// r = cohort / noise_cohort
double noise_scale_ratio(std::int64_t cohort_size, std::int64_t noise_cohort_size);

// Adds N(0, (r * sigma * clip_bound)^2) to every element of the summed
// aggregate.
Statistics gaussian_mechanism_central(const Statistics& aggregate, double clip_bound,
                                      double sigma, double r, std::uint64_t seed);

// Adds Laplace(l1_bound / epsilon_per_query) noise to every element. An
// infinite epsilon means zero noise.
Statistics laplace_mechanism_central(const Statistics& aggregate, double l1_bound,
                                     double epsilon_per_query, std::uint64_t seed);

// Geometric bound update toward the target clipped quantile:
//   bound * exp(-lr * (clipped_fraction - quantile)), clamped to [1e-6, 1e6].
double adaptive_clip_update(double bound, double clipped_fraction, double quantile, double lr);

// Std of one central Gaussian draw distributed like the sum of cohort_size
// independent per-user Gaussian draws with std local_std.
double clt_local_approximation(double local_std, std::int64_t cohort_size);

// ||delta||_2 / sqrt(d * sigma^2). +inf for zero noise on a non-zero signal,
// 0 for a zero signal with noise; kUndefined when both are zero.
double snr(const Statistics& aggregate_delta, double sigma, std::size_t dimension);

}  // namespace pflsim::privacy
