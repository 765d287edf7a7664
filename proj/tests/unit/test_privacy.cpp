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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "pflsim/core/error.h"
#include "pflsim/privacy/accountant.h"
#include "pflsim/privacy/config.h"
#include "pflsim/privacy/mechanisms.h"
#include "pflsim/privacy/postprocessors.h"
#include "test_util.h"

namespace pflsim::privacy {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Statistics zeros(std::size_t n, double weight = 1.0) { return Statistics({{"x", std::vector<double>(n)}}, weight); }

struct Moments {
  double mean = 0.0;
  double stddev = 0.0;
};

Moments moments(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1))};
}

// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double worst = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    worst = std::max(worst, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return worst;
}

// Oracle for integer orders: the binomial expansion summed directly.
double rdp_integer_oracle(double q, double sigma, int alpha) {
  long double a = 0.0L;
  long double binom = 1.0L;
  for (int k = 0; k <= alpha; ++k) {
    if (k > 0) binom = binom * (alpha - k + 1) / k;
    a += binom * std::pow(1.0L - q, alpha - k) * std::pow(static_cast<long double>(q), k) *
         std::exp(static_cast<long double>(k * k - k) / (2.0L * sigma * sigma));
  }
  return static_cast<double>(std::log(a) / (alpha - 1));
}

// Oracle for any order: Simpson integration of E_{z ~ N(0, s^2)}[(mu(z) / mu0(z))^alpha].
double rdp_quadrature_oracle(double q, double sigma, double alpha) {
  const long double s = sigma;
  const long double lo = -30.0L * s, hi = 30.0L * s + 1.0L;
  const int n = 200000;
  const long double h = (hi - lo) / n;
  auto f = [&](long double z) {
    const long double mu0 = std::exp(-z * z / (2 * s * s)) / (s * std::sqrt(2.0L * M_PI));
    const long double ratio = (1.0L - q) + q * std::exp((2.0L * z - 1.0L) / (2.0L * s * s));
    return mu0 * std::pow(ratio, static_cast<long double>(alpha));
  };
  long double sum = f(lo) + f(hi);
  for (int i = 1; i < n; ++i) sum += f(lo + i * h) * (i % 2 == 1 ? 4.0L : 2.0L);
  return static_cast<double>(std::log(sum * h / 3.0L) / (alpha - 1.0L));
}

TEST(Clip, WorkedExamples) {
  const ClipResult big = clip_norm(Statistics({{"a", {3.0}}, {"b", {4.0}}}, 7), 1.0);
  EXPECT_TRUE(big.clipped);
  EXPECT_DOUBLE_EQ(big.original_norm, 5.0);
  EXPECT_NEAR(big.statistics.at("a")[0], 0.6, 1e-15);
  EXPECT_NEAR(big.statistics.at("b")[0], 0.8, 1e-15);
  EXPECT_EQ(big.statistics.weight(), 7);

  const Statistics small({{"a", {0.3}}, {"b", {0.4}}}, 1);
  const ClipResult kept = clip_norm(small, 1.0);
  EXPECT_FALSE(kept.clipped);
  EXPECT_EQ(kept.statistics, small);

  const ClipResult zero = clip_norm(zeros(4), 0.5);
  EXPECT_FALSE(zero.clipped);
  EXPECT_EQ(zero.statistics, zeros(4));

  const ClipResult l1 = clip_l1_norm(Statistics({{"a", {3.0, -1.0}}}, 1), 2.0);
  EXPECT_TRUE(l1.clipped);
  EXPECT_NEAR(l1.statistics.at("a")[0], 1.5, 1e-15);
  EXPECT_NEAR(l1.statistics.at("a")[1], -0.5, 1e-15);
  EXPECT_THROW(clip_norm(small, 0.0), Error);
}

TEST(Clip, NormNeverExceedsBound) {
  std::mt19937_64 rng(21);
  std::lognormal_distribution<double> scale(0.0, 3.0);
  for (int trial = 0; trial < 500; ++trial) {
    Statistics s = testing::random_statistics(rng);
    const double factor = scale(rng);
    for (auto& [name, v] : s.mutable_entries()) {
      for (double& x : v) x *= factor;
    }
    const double bound = scale(rng);
    EXPECT_LE(clip_norm(s, bound).statistics.l2_norm(), bound + 1e-12);
    EXPECT_LE(l1_norm(clip_l1_norm(s, bound).statistics), bound * (1 + 1e-12));
  }
}

TEST(GaussianMechanism, NoiseStdMatches) {
  // r = 0.05, sigma = 0.4, S = 1 -> std 0.02
  const Statistics noised = gaussian_mechanism_central(zeros(100000), 1.0, 0.4, 0.05, 17);
  const Moments m = moments(noised.at("x"));
  EXPECT_NEAR(m.stddev, 0.02, 0.02 * 0.02);
  EXPECT_NEAR(m.mean, 0.0, 4 * 0.02 / std::sqrt(1e5));
  EXPECT_EQ(noised.weight(), 1.0);
}

TEST(GaussianMechanism, ZeroSigmaLeavesAggregate) {
  std::mt19937_64 rng(1);
  const Statistics s = testing::random_statistics(rng);
  EXPECT_EQ(gaussian_mechanism_central(s, 1.0, 0.0, 1.0, 3), s);
}

TEST(GaussianMechanism, DifferentNoiseSeedsDifferBySqrtTwoStd) {
  auto bound = std::make_shared<ClipBound>(ClipBound{0.5});
  const double sigma = 2.0, r = 0.1;
  GaussianMechanism a(bound, sigma, r, 1);
  GaussianMechanism b(bound, sigma, r, 2);
  CentralContext ctx;
  ctx.local_params = LocalParams{};
  Statistics sa = zeros(100000), sb = zeros(100000);
  Metrics ma, mb;
  engine::ServerPostprocessContext ca{ctx, 10, ma}, cb{ctx, 10, mb};
  a.postprocess_server(sa, ca);
  b.postprocess_server(sb, cb);
  std::vector<double> diff(sa.at("x").size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = sa.at("x")[i] - sb.at("x")[i];
  const double expected = std::sqrt(2.0) * r * sigma * 0.5;
  EXPECT_NEAR(moments(diff).stddev, expected, 0.02 * expected);
  EXPECT_DOUBLE_EQ(ma.value("dp/noise_std"), r * sigma * 0.5);

  // Same seed, same iteration: identical noise.
  GaussianMechanism again(bound, sigma, r, 1);
  Statistics sc = zeros(100000);
  Metrics mc;
  engine::ServerPostprocessContext cc{ctx, 10, mc};
  again.postprocess_server(sc, cc);
  EXPECT_EQ(sc, sa);
}

TEST(LaplaceMechanism, StdAndSymmetry) {
  // scale = 1 / 2
  const Statistics noised = laplace_mechanism_central(zeros(100000), 1.0, 2.0, 5);
  const std::vector<double>& v = noised.at("x");
  const Moments m = moments(v);
  EXPECT_NEAR(m.stddev, std::sqrt(2.0) * 0.5, 0.02 * std::sqrt(2.0) * 0.5);
  EXPECT_NEAR(m.mean, 0.0, 4 * m.stddev / std::sqrt(1e5));
  const double positive = static_cast<double>(std::count_if(v.begin(), v.end(), [](double x) { return x > 0; }));
  EXPECT_NEAR(positive / v.size(), 0.5, 0.01);
  EXPECT_EQ(laplace_mechanism_central(zeros(10), 1.0, kInf, 5), zeros(10));
  EXPECT_THROW(laplace_mechanism_central(zeros(10), 1.0, 0.0, 5), Error);
}

TEST(AdaptiveClipping, UpdateRule) {
  EXPECT_DOUBLE_EQ(adaptive_clip_update(1.3, 0.5, 0.5, 0.2), 1.3);
  EXPECT_NEAR(adaptive_clip_update(1.0, 1.0, 0.5, 0.2), std::exp(-0.1), 1e-15);
  EXPECT_NEAR(adaptive_clip_update(1.0, 1.0, 0.5, 0.2), 0.9048, 1e-4);
  EXPECT_NEAR(adaptive_clip_update(1.0, 0.0, 0.5, 0.2), std::exp(0.1), 1e-15);
  EXPECT_THROW(adaptive_clip_update(1.0, 0.5, 1.0, 0.2), Error);
  EXPECT_THROW(adaptive_clip_update(1.0, 0.5, 0.5, 0.0), Error);
}

TEST(AdaptiveClipping, PostprocessorMovesTheSharedBound) {
  auto bound = std::make_shared<ClipBound>(ClipBound{1.0});
  ClipPostprocessor clip(bound, NormKind::kL2, AdaptiveClipping{0.5, 0.2, 0.0, 0});
  CentralContext ctx;
  ctx.local_params = LocalParams{};
  const algorithms::UserAux aux;
  Metrics user_metrics;
  for (double norm : {5.0, 5.0, 5.0, 0.1}) {  // three of four clipped
    Statistics s({{"x", {norm}}}, 1);
    Metrics m;
    clip.postprocess_one_user(s, engine::UserPostprocessContext{ctx, "u", aux}, m);
    EXPECT_LE(s.l2_norm(), 1.0);
    user_metrics.merge(m);
  }
  Statistics aggregate = zeros(1);
  engine::ServerPostprocessContext server{ctx, 4, user_metrics};
  clip.postprocess_server(aggregate, server);
  EXPECT_NEAR(bound->value, std::exp(-0.2 * 0.25), 1e-15);
  EXPECT_DOUBLE_EQ(user_metrics.value("dp/clipped_fraction"), 0.75);
}

TEST(LocalApproximation, CentralStdIsSqrtCohortTimesLocal) {
  EXPECT_DOUBLE_EQ(clt_local_approximation(0.5, 100), 5.0);
  EXPECT_DOUBLE_EQ(clt_local_approximation(2.0, 1), 2.0);
  EXPECT_THROW(clt_local_approximation(1.0, 0), Error);
}

TEST(LocalApproximation, MatchesTrueLocalNoiseInDistribution) {
  const int cohort = 20;
  const std::size_t dim = 5000;
  const double local_std = 0.3;
  CentralContext ctx;
  ctx.local_params = LocalParams{};
  const algorithms::UserAux aux;

  GaussianLocalMechanism local(local_std, 8);
  Statistics summed = zeros(dim, 0.0);
  for (int u = 0; u < cohort; ++u) {
    Statistics s = zeros(dim);
    Metrics m;
    const std::string id = "u" + std::to_string(u);
    local.postprocess_one_user(s, engine::UserPostprocessContext{ctx, id, aux}, m);
    summed = accumulate(summed, s);
  }
  GaussianLocalApproximation approx(local_std, 9);
  Statistics central = zeros(dim, cohort);
  Metrics m;
  engine::ServerPostprocessContext server{ctx, cohort, m};
  approx.postprocess_server(central, server);

  // KS critical value at significance 0.001 for two samples of size n.
  const double critical = 1.95 * std::sqrt(2.0 / dim);
  EXPECT_LT(ks_statistic(summed.at("x"), central.at("x")), critical);
  EXPECT_NEAR(moments(central.at("x")).stddev, local_std * std::sqrt(cohort), 0.03 * local_std * std::sqrt(cohort));
}

TEST(Snr, Cases) {
  const Statistics s({{"x", {3.0, 4.0}}}, 1);
  EXPECT_DOUBLE_EQ(snr(s, 1.0, 2), 5.0 / std::sqrt(2.0));
  EXPECT_EQ(snr(s, 0.0, 2), kInf);
  EXPECT_EQ(snr(zeros(2), 1.0, 2), 0.0);
  try {
    snr(zeros(2), 0.0, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUndefined);
  }
}

TEST(Pipeline, MechanismNeedsClipUpstream) {
  auto bound = std::make_shared<ClipBound>();
  auto clip = std::make_shared<ClipPostprocessor>(bound);
  auto gauss = std::make_shared<GaussianMechanism>(bound, 1.0, 1.0, 0);
  EXPECT_NO_THROW(engine::validate_pipeline(engine::PostprocessorList{clip, gauss}));
  for (const auto& bad : {engine::PostprocessorList{gauss}, engine::PostprocessorList{gauss, clip},
                          engine::PostprocessorList{clip, gauss, clip}}) {
    try {
      engine::validate_pipeline(bad);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kNotClippedUpstream);
    }
  }
}

TEST(Accountant, FullBatchMatchesGaussianRdp) {
  // q = 1: rdp(alpha) = alpha / (2 sigma^2) exactly.
  for (double alpha : {1.5, 2.0, 7.0, 32.0}) {
    EXPECT_NEAR(rdp_subsampled_gaussian(1.0, 1.3, alpha), alpha / (2 * 1.3 * 1.3), 1e-12);
  }
  // Continuous optimum over alpha for sigma = 1, T = 1, delta = 1e-6.
  const double log_inv_delta = std::log(1e6);
  const double a_star = 1 + std::sqrt(2 * log_inv_delta);
  const double continuous = a_star / 2 + log_inv_delta / (a_star - 1);
  EXPECT_NEAR(continuous, 5.756, 1e-3);
  EXPECT_NEAR(rdp_account(1.0, 1.0, 1, 1e-6).epsilon, continuous, 1e-2);
}

TEST(Accountant, IntegerOrdersMatchBinomialOracle) {
  for (double q : {0.001, 0.01, 0.2}) {
    for (double sigma : {0.7, 1.0, 3.0}) {
      for (int alpha : {2, 3, 8, 20}) {
        EXPECT_LE(testing::rel_diff(rdp_subsampled_gaussian(q, sigma, alpha), rdp_integer_oracle(q, sigma, alpha)),
                  1e-9)
            << q << " " << sigma << " " << alpha;
      }
    }
  }
}

TEST(Accountant, FractionalOrdersMatchQuadratureOracle) {
  for (double q : {0.005, 0.05}) {
    for (double sigma : {0.9, 2.0}) {
      for (double alpha : {1.25, 1.5, 1.75, 2.0, 3.0}) {
        EXPECT_LE(testing::rel_diff(rdp_subsampled_gaussian(q, sigma, alpha), rdp_quadrature_oracle(q, sigma, alpha)),
                  1e-6)
            << q << " " << sigma << " " << alpha;
      }
    }
  }
}

TEST(Accountant, MonotoneInEveryArgument) {
  const double qs[] = {1e-4, 1e-3, 1e-2};
  const double sigmas[] = {0.6, 1.0, 2.0};
  const std::int64_t steps[] = {1, 100, 1000};
  int checked = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t k = 0; k < 3; ++k) {
        const double eps = rdp_account(sigmas[j], qs[i], steps[k], 1e-6).epsilon;
        if (i + 1 < 3) {
          EXPECT_LE(eps, rdp_account(sigmas[j], qs[i + 1], steps[k], 1e-6).epsilon);
        }
        if (j + 1 < 3) {
          EXPECT_GE(eps, rdp_account(sigmas[j + 1], qs[i], steps[k], 1e-6).epsilon);
        }
        if (k + 1 < 3) {
          EXPECT_LE(eps, rdp_account(sigmas[j], qs[i], steps[k + 1], 1e-6).epsilon);
        }
        EXPECT_GE(eps, rdp_account(sigmas[j], qs[i], steps[k], 1e-5).epsilon);
        ++checked;
      }
    }
  }
  EXPECT_EQ(checked, 27);
}

TEST(Accountant, CompositionIsLinearInSteps) {
  const auto& orders = default_rdp_orders();
  const auto one = rdp_curve(0.01, 1.1, 300, orders);
  const auto two = rdp_curve(0.01, 1.1, 600, orders);
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (std::isfinite(one[i])) {
      EXPECT_LE(testing::rel_diff(two[i], 2 * one[i]), 1e-14);
    }
  }
}

TEST(Accountant, ZeroSigmaIsInfiniteEpsilon) {
  EXPECT_EQ(rdp_account(0.0, 0.01, 10, 1e-6).epsilon, kInf);
}

TEST(Calibration, TypicalBudgetIsTightAndBracketed) {
  const AccountantResult r = calibrate_sigma(2.0, 1e-6, 1e-3, 1500);
  EXPECT_LE(r.epsilon, 2.0);
  EXPECT_GE(r.epsilon, 2.0 - 1e-3);
  EXPECT_EQ(rdp_account(r.sigma, 1e-3, 1500, 1e-6).epsilon, r.epsilon);
  EXPECT_GT(rdp_account(0.99 * r.sigma, 1e-3, 1500, 1e-6).epsilon, 2.0);
}

TEST(Calibration, RandomRoundTrips) {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> log_q(std::log(1e-4), std::log(2e-2));
  std::uniform_int_distribution<std::int64_t> steps(10, 3000);
  std::uniform_real_distribution<double> eps(0.5, 8.0);
  std::uniform_real_distribution<double> log_delta(std::log(1e-7), std::log(1e-5));
  for (int trial = 0; trial < 20; ++trial) {
    const double q = std::exp(log_q(rng));
    const std::int64_t t = steps(rng);
    const double target = eps(rng);
    const double delta = std::exp(log_delta(rng));
    const AccountantResult r = calibrate_sigma(target, delta, q, t);
    EXPECT_LE(r.epsilon, target);
    if (r.sigma > CalibrationBracket{}.min_sigma) {
      EXPECT_GE(r.epsilon, target - 1e-3) << q << " " << t << " " << target << " " << delta;
    }
  }
}

TEST(Calibration, MoreBudgetNeedsLessNoise) {
  double previous = kInf;
  for (double target : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    const double sigma = calibrate_sigma(target, 1e-6, 5e-3, 2000).sigma;
    EXPECT_LT(sigma, previous);
    previous = sigma;
  }
}

TEST(Calibration, SingleStepSmallRate) {
  const AccountantResult r = calibrate_sigma(0.5, 1e-6, 1e-3, 1);
  EXPECT_LE(r.epsilon, 0.5);
  if (r.sigma > CalibrationBracket{}.min_sigma) {
    EXPECT_GE(r.epsilon, 0.5 - 1e-3);
  }
}

TEST(Calibration, UnachievableThrows) {
  try {
    calibrate_sigma(0.01, 1e-6, 0.5, 1000, CalibrationBracket{0.3, 2.0, 1e-3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnachievable);
  }
}

PrivacyConfig dp_config(Mechanism mechanism) {
  PrivacyConfig c;
  c.mechanism = mechanism;
  c.epsilon = 2.0;
  c.delta = 1e-6;
  c.population = 1000000;
  c.cohort_size = 50;
  c.noise_cohort_size = 1000;
  c.clip_bound = 0.4;
  c.total_iterations = 1500;
  return c;
}

TEST(PrivacyPipeline, GaussianIsCalibrated) {
  const PrivacyPipeline p = build_privacy_pipeline(dp_config(Mechanism::kGaussianCentral));
  ASSERT_EQ(p.postprocessors.size(), 2u);
  EXPECT_EQ(p.postprocessors[0]->name(), "clip");
  EXPECT_EQ(p.postprocessors[1]->name(), "gaussian");
  ASSERT_TRUE(p.accountant.has_value());
  EXPECT_LE(p.accountant->epsilon, 2.0);
  EXPECT_GE(p.accountant->epsilon, 2.0 - 1e-3);
  EXPECT_DOUBLE_EQ(p.noise_scale_ratio, 0.05);
  EXPECT_DOUBLE_EQ(p.clip_bound->value, 0.4);
}

TEST(PrivacyPipeline, ExplicitNoiseMultiplierIsAccounted) {
  PrivacyConfig c = dp_config(Mechanism::kGaussianCentral);
  c.noise_multiplier = 1.5;
  const PrivacyPipeline p = build_privacy_pipeline(c);
  EXPECT_EQ(p.accountant->sigma, 1.5);
  EXPECT_EQ(p.accountant->epsilon, rdp_account(1.5, 1e-3, 1500, 1e-6).epsilon);
  c.noise_multiplier = 0.0;
  EXPECT_EQ(build_privacy_pipeline(c).accountant->epsilon, kInf);
}

TEST(PrivacyPipeline, LaplaceSplitsEpsilonAndNoneIsEmpty) {
  const PrivacyPipeline lap = build_privacy_pipeline(dp_config(Mechanism::kLaplaceCentral));
  EXPECT_DOUBLE_EQ(lap.epsilon_per_query, 2.0 / 1500);
  EXPECT_EQ(lap.postprocessors.at(1)->name(), "laplace");
  EXPECT_TRUE(build_privacy_pipeline(dp_config(Mechanism::kNone)).postprocessors.empty());
  EXPECT_EQ(parse_mechanism(mechanism_name(Mechanism::kGaussianLocalApprox)), Mechanism::kGaussianLocalApprox);
  EXPECT_THROW(parse_mechanism("gauss"), Error);
}

TEST(PrivacyConfig, DerivedQuantitiesAndValidation) {
  PrivacyConfig c = dp_config(Mechanism::kGaussianCentral);
  EXPECT_DOUBLE_EQ(c.sampling_rate(), 1e-3);
  c.delta.reset();
  EXPECT_DOUBLE_EQ(c.effective_delta(), 1e-6);
  EXPECT_NO_THROW(c.validate());
  c.noise_cohort_size = 2000000;
  EXPECT_THROW(c.validate(), Error);
  c = dp_config(Mechanism::kGaussianCentral);
  c.clip_bound = -1;
  EXPECT_THROW(c.validate(), Error);
}

}  // namespace
}  // namespace pflsim::privacy
