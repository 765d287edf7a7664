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

#include "pflsim/privacy/accountant.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pflsim/core/error.h"

namespace pflsim::privacy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

double log_sub(double a, double b) {
  if (b == -kInf) return a;
  if (b >= a) return -kInf;
  return a + std::log1p(-std::exp(b - a));
}

// log(erfc(x)), stable in the far right tail.
double log_erfc(double x) {
  if (x < 25.0) return std::log(std::erfc(x));
  const double x2 = x * x;
  // erfc(x) ~ exp(-x^2) / (x sqrt(pi)) * (1 - 1/(2x^2) + 3/(4x^4) - 15/(8x^6))
  const double series = 1.0 - 1.0 / (2.0 * x2) + 3.0 / (4.0 * x2 * x2) - 15.0 / (8.0 * x2 * x2 * x2);
  return -x2 - std::log(x) - 0.5 * std::log(M_PI) + std::log(series);
}

double log_a_integer(double q, double sigma, int alpha) {
  const double log_q = std::log(q);
  const double log_1mq = std::log1p(-q);
  const double inv_2s2 = 1.0 / (2.0 * sigma * sigma);
  double log_a = -kInf;
  for (int k = 0; k <= alpha; ++k) {
    const double log_binom = std::lgamma(alpha + 1.0) - std::lgamma(k + 1.0) - std::lgamma(alpha - k + 1.0);
    const double kk = static_cast<double>(k);
    log_a = log_add(log_a, log_binom + kk * log_q + (alpha - kk) * log_1mq + (kk * kk - kk) * inv_2s2);
  }
  return log_a;
}

double log_a_fractional(double q, double sigma, double alpha) {
  const double log_q = std::log(q);
  const double log_1mq = std::log1p(-q);
  const double s2 = sigma * sigma;
  const double z0 = s2 * std::log(1.0 / q - 1.0) + 0.5;
  const double sqrt2_sigma = std::sqrt(2.0) * sigma;
  double log_a0 = -kInf;
  double log_a1 = -kInf;
  // Generalized binomial coefficient, tracked as sign and log magnitude.
  double log_coef = 0.0;
  bool coef_positive = true;
  for (int i = 0; i < 100000; ++i) {
    if (i > 0) {
      const double factor = (alpha - (i - 1)) / static_cast<double>(i);
      if (factor == 0.0) break;
      log_coef += std::log(std::abs(factor));
      if (factor < 0.0) coef_positive = !coef_positive;
    }
    const double di = static_cast<double>(i);
    const double j = alpha - di;
    const double log_t0 = log_coef + di * log_q + j * log_1mq;
    const double log_t1 = log_coef + j * log_q + di * log_1mq;
    const double log_e0 = std::log(0.5) + log_erfc((di - z0) / sqrt2_sigma);
    const double log_e1 = std::log(0.5) + log_erfc((z0 - j) / sqrt2_sigma);
    const double log_s0 = log_t0 + (di * di - di) / (2.0 * s2) + log_e0;
    const double log_s1 = log_t1 + (j * j - j) / (2.0 * s2) + log_e1;
    if (coef_positive) {
      log_a0 = log_add(log_a0, log_s0);
      log_a1 = log_add(log_a1, log_s1);
    } else {
      log_a0 = log_sub(log_a0, log_s0);
      log_a1 = log_sub(log_a1, log_s1);
    }
    if (std::max(log_s0, log_s1) < -30.0) break;
  }
  return log_add(log_a0, log_a1);
}

}  // namespace

const std::vector<double>& default_rdp_orders() {
  static const std::vector<double> orders = [] {
    std::vector<double> v{1.25, 1.5, 1.75};
    for (int a = 2; a <= 512; ++a) v.push_back(a);
    return v;
  }();
  return orders;
}

double rdp_subsampled_gaussian(double q, double sigma, double alpha) {
  if (!(q >= 0.0 && q <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "sampling rate must be in [0, 1]");
  if (!(sigma >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "noise multiplier must be >= 0");
  if (!(alpha > 1.0)) throw Error(ErrorCode::kInvalidArgument, "RDP order must be > 1");
  if (q == 0.0) return 0.0;
  if (sigma == 0.0) return kInf;
  if (q == 1.0) return alpha / (2.0 * sigma * sigma);
  const double log_a = alpha == std::floor(alpha) ? log_a_integer(q, sigma, static_cast<int>(alpha))
                                                  : log_a_fractional(q, sigma, alpha);
  const double rdp = log_a / (alpha - 1.0);
  return std::isfinite(rdp) ? rdp : kInf;
}

std::vector<double> rdp_curve(double q, double sigma, std::int64_t steps,
                              std::span<const double> orders) {
  std::vector<double> out;
  out.reserve(orders.size());
  for (double alpha : orders) {
    out.push_back(static_cast<double>(steps) * rdp_subsampled_gaussian(q, sigma, alpha));
  }
  return out;
}

AccountantResult rdp_to_epsilon(std::span<const double> orders, std::span<const double> rdp,
                                double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorCode::kInvalidArgument, "delta must be in (0, 1)");
  AccountantResult best{0.0, kInf, 0.0};
  const double log_inv_delta = std::log(1.0 / delta);
  for (std::size_t k = 0; k < orders.size(); ++k) {
    const double eps = rdp[k] + log_inv_delta / (orders[k] - 1.0);
    if (eps < best.epsilon) best = {0.0, eps, orders[k]};
  }
  return best;
}

AccountantResult rdp_account(double sigma, double q, std::int64_t steps, double delta,
                             std::span<const double> orders) {
  if (steps < 1) throw Error(ErrorCode::kInvalidArgument, "need at least one step");
  if (!(q > 0.0 && q <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "sampling rate must be in (0, 1]");
  const auto curve = rdp_curve(q, sigma, steps, orders);
  AccountantResult r = rdp_to_epsilon(orders, curve, delta);
  r.sigma = sigma;
  return r;
}

AccountantResult calibrate_sigma(double target_epsilon, double delta, double q,
                                 std::int64_t steps, CalibrationBracket bracket) {
  if (!(target_epsilon > 0.0)) throw Error(ErrorCode::kInvalidArgument, "target epsilon must be > 0");
  AccountantResult hi = rdp_account(bracket.max_sigma, q, steps, delta);
  if (hi.epsilon > target_epsilon) {
    throw Error(ErrorCode::kUnachievable,
                "epsilon " + std::to_string(target_epsilon) + " needs sigma above " +
                    std::to_string(bracket.max_sigma));
  }
  AccountantResult lo = rdp_account(bracket.min_sigma, q, steps, delta);
  if (lo.epsilon <= target_epsilon) return lo;
  // Invariant: lo.epsilon > target >= hi.epsilon.
  for (int iter = 0; iter < 200; ++iter) {
    if (target_epsilon - hi.epsilon <= bracket.epsilon_tolerance) break;
    const double mid_sigma = 0.5 * (lo.sigma + hi.sigma);
    if (mid_sigma == lo.sigma || mid_sigma == hi.sigma) break;
    const AccountantResult mid = rdp_account(mid_sigma, q, steps, delta);
    (mid.epsilon > target_epsilon ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace pflsim::privacy
