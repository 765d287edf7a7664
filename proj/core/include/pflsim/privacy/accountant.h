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
#include <span>
#include <vector>

namespace pflsim::privacy {

// Renyi-DP accounting for the Poisson-subsampled Gaussian mechanism.
//
// For sampling rate q, noise multiplier sigma (noise std = sigma * clip bound
// on the sum) and order alpha, the per-step RDP is log(A_alpha) / (alpha - 1)
// where A_alpha is the moment of the mixture (1 - q) N(0, s^2) + q N(1, s^2)
// against N(0, s^2). Integer orders use the finite binomial expansion;
// fractional orders use the convergent two-sided series with erfc tails.
// Composition over T steps is linear, and conversion to (epsilon, delta) uses
//   epsilon = min_alpha T * rdp(alpha) + log(1 / delta) / (alpha - 1).

struct AccountantResult {
  double sigma = 0.0;
  double epsilon = 0.0;
  double alpha = 0.0;  // order attaining the minimum
};

// {1.25, 1.5, 1.75, 2, 3, 4, ..., 512}
const std::vector<double>& default_rdp_orders();

// Per-step RDP of the subsampled Gaussian at one order. +inf on overflow.
double rdp_subsampled_gaussian(double q, double sigma, double alpha);

// RDP curve over `orders` for T composed steps.
std::vector<double> rdp_curve(double q, double sigma, std::int64_t steps,
                              std::span<const double> orders);

// Converts an RDP curve to (epsilon, alpha) at the given delta.
AccountantResult rdp_to_epsilon(std::span<const double> orders, std::span<const double> rdp,
                                double delta);

// epsilon = +inf (never an exception) when the curve overflows.
AccountantResult rdp_account(double sigma, double q, std::int64_t steps, double delta,
                             std::span<const double> orders = default_rdp_orders());

struct CalibrationBracket {
  double min_sigma = 0.3;
  double max_sigma = 1e4;
  double epsilon_tolerance = 1e-3;
};

// Smallest-found sigma with achieved epsilon in [target - tol, target]. When
// even min_sigma is below target - tol, min_sigma is returned as is. Throws
// kUnachievable when max_sigma still exceeds the target.
AccountantResult calibrate_sigma(double target_epsilon, double delta, double q,
                                 std::int64_t steps, CalibrationBracket bracket = {});

}  // namespace pflsim::privacy
