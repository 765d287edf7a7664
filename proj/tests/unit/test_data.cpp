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

#include <cmath>
#include <filesystem>
#include <map>
#include <numeric>
#include <set>

#include "pflsim/core/error.h"
#include "pflsim/data/csv_io.h"
#include "pflsim/data/partition.h"
#include "pflsim/data/sampling.h"
#include "pflsim/data/synthetic.h"

namespace pflsim::data {
namespace {

// Row i has feature value i, so rows can be traced back to the source.
LabeledData indexed(std::size_t n, int classes = 10) {
  LabeledData d;
  d.dim = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i);
    d.push_back(std::span<const double>(&x, 1), static_cast<int>(i % static_cast<std::size_t>(classes)));
  }
  return d;
}

std::multiset<double> source_rows(const FederatedDataset& ds) {
  std::multiset<double> rows;
  for (const auto& [id, user] : ds.users()) {
    for (double x : user.data().features) rows.insert(x);
  }
  return rows;
}

TEST(PartitionIid, EqualDisjointUsers) {
  const FederatedDataset ds = partition_iid(indexed(100), 10, 1);
  EXPECT_EQ(ds.num_users(), 10u);
  for (const auto& [id, user] : ds.users()) {
    EXPECT_EQ(user.size(), 10u);
    EXPECT_EQ(user.weight(), 10.0);
  }
  const auto rows = source_rows(ds);
  EXPECT_EQ(rows.size(), 100u);
  EXPECT_EQ(std::set<double>(rows.begin(), rows.end()).size(), 100u);
  EXPECT_EQ(ds.total_points(), 100u);
}

TEST(PartitionIid, FiftyThousandPointsGiveThousandUsers) {
  const FederatedDataset ds = partition_iid(indexed(50000), 50, 3);
  EXPECT_EQ(ds.num_users(), 1000u);
  EXPECT_EQ(ds.dropped_points, 0u);
}

TEST(PartitionIid, RemainderIsDroppedAndCounted) {
  const FederatedDataset ds = partition_iid(indexed(105), 10, 1);
  EXPECT_EQ(ds.num_users(), 10u);
  EXPECT_EQ(ds.dropped_points, 5u);
  EXPECT_EQ(ds.total_points() + ds.dropped_points, 105u);
}

TEST(PartitionIid, DeterministicPerSeed) {
  const LabeledData src = indexed(200);
  const FederatedDataset a = partition_iid(src, 20, 9);
  const FederatedDataset b = partition_iid(src, 20, 9);
  const FederatedDataset c = partition_iid(src, 20, 10);
  EXPECT_EQ(a.user("u000000").data().features, b.user("u000000").data().features);
  EXPECT_NE(a.user("u000000").data().features, c.user("u000000").data().features);
}

TEST(PartitionIid, TooFewPoints) {
  try {
    partition_iid(indexed(5), 10, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooFewPoints);
  }
}

TEST(PartitionIid, ValidationUsersHaveTheirOwnIds) {
  const FederatedDataset train = partition_iid(indexed(100), 10, 1, Population::kTrain);
  const FederatedDataset val = partition_iid(indexed(100), 10, 1, Population::kVal);
  for (const auto& id : val.user_ids()) EXPECT_FALSE(train.contains(id));
  EXPECT_EQ(val.population(), Population::kVal);
}

TEST(PartitionDirichlet, ExactSizesAndDisjoint) {
  const LabeledData src = indexed(3000);
  const FederatedDataset ds = partition_dirichlet(src, 50, 50, 0.1, 4);
  EXPECT_EQ(ds.num_users(), 50u);
  for (const auto& [id, user] : ds.users()) EXPECT_EQ(user.size(), 50u);
  const auto rows = source_rows(ds);
  EXPECT_EQ(std::set<double>(rows.begin(), rows.end()).size(), 2500u);
  EXPECT_EQ(ds.dropped_points, 500u);
}

TEST(PartitionDirichlet, InsufficientData) {
  try {
    partition_dirichlet(indexed(99), 10, 10, 1.0, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInsufficientData);
  }
  EXPECT_THROW(partition_dirichlet(indexed(100), 10, 10, 0.0, 1), Error);
}

std::vector<double> class_histogram(const UserDataset& user, int classes) {
  std::vector<double> h(static_cast<std::size_t>(classes), 0.0);
  for (int y : user.data().labels) h[static_cast<std::size_t>(y)] += 1.0;
  for (double& v : h) v /= static_cast<double>(user.size());
  return h;
}

double normalized_entropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log(v);
  }
  return h / std::log(static_cast<double>(p.size()));
}

TEST(PartitionDirichlet, LargeAlphaMatchesGlobalDistribution) {
  // 500 points per user keep the multinomial sampling error well below the
  // 0.1 threshold; the source holds twice what the users consume so that
  // pool exhaustion never kicks in.
  const LabeledData src = indexed(20000);
  double mean_tv = 0.0;
  int count = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const FederatedDataset ds = partition_dirichlet(src, 20, 500, 1000.0, seed);
    for (const auto& [id, user] : ds.users()) {
      const auto h = class_histogram(user, 10);
      double tv = 0.0;
      for (double v : h) tv += std::abs(v - 0.1);
      mean_tv += 0.5 * tv;
      ++count;
    }
  }
  mean_tv /= count;
  EXPECT_LT(mean_tv, 0.1);
}

TEST(PartitionDirichlet, SmallAlphaConcentratesClasses) {
  const LabeledData src = indexed(10000);
  double small = 0.0;
  double large = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (double alpha : {0.1, 1000.0}) {
      const FederatedDataset ds = partition_dirichlet(src, 100, 50, alpha, seed);
      double h = 0.0;
      for (const auto& [id, user] : ds.users()) h += normalized_entropy(class_histogram(user, 10));
      (alpha < 1.0 ? small : large) += h / static_cast<double>(ds.num_users());
    }
  }
  EXPECT_LT(small / 20.0, 0.5 * large / 20.0);
}

FederatedDataset users(std::size_t n) { return partition_iid(indexed(n * 2), 2, 0); }

TEST(SampleCohort, FullCohortIsEveryUser) {
  const FederatedDataset ds = users(25);
  auto cohort = sample_cohort(ds, 25, 5);
  std::sort(cohort.begin(), cohort.end());
  EXPECT_EQ(cohort, ds.user_ids());
}

TEST(SampleCohort, FixedSizeDistinctAndDeterministic) {
  const FederatedDataset ds = users(100);
  const auto a = sample_cohort(ds, 30, 77);
  EXPECT_EQ(a, sample_cohort(ds, 30, 77));
  EXPECT_NE(a, sample_cohort(ds, 30, 78));
  EXPECT_EQ(std::set<std::string>(a.begin(), a.end()).size(), 30u);
}

TEST(SampleCohort, TooLarge) {
  try {
    sample_cohort(users(5), 6, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCohortTooLarge);
  }
}

TEST(SampleCohort, PoissonMeanCohortSize) {
  const FederatedDataset ds = users(1000);
  double total = 0.0;
  const int draws = 10000;
  for (int s = 0; s < draws; ++s) {
    total += static_cast<double>(sample_cohort(ds, 0, static_cast<std::uint64_t>(s), CohortMode::poisson(0.005)).size());
  }
  EXPECT_NEAR(total / draws, 5.0, 0.05 * 5.0);
  EXPECT_THROW(sample_cohort(ds, 0, 1, CohortMode::poisson(0.0)), Error);
  EXPECT_THROW(sample_cohort(ds, 0, 1, CohortMode::poisson(1.5)), Error);
}

TEST(SampleCohort, UniformSelectionFrequency) {
  const FederatedDataset ds = users(10);
  std::map<std::string, int> hits;
  const int seeds = 10000;
  for (int s = 0; s < seeds; ++s) ++hits[sample_cohort(ds, 1, static_cast<std::uint64_t>(s))[0]];
  const double sd = std::sqrt(0.1 * 0.9 / seeds);
  ASSERT_EQ(hits.size(), 10u);
  for (const auto& [id, n] : hits) EXPECT_NEAR(n / static_cast<double>(seeds), 0.1, 3 * sd) << id;
}

// Plain full-batch gradient descent on binary logistic loss, used as an
// independent check that the two clusters are linearly separable.
double oracle_logistic_accuracy(const LabeledData& train, const LabeledData& test) {
  std::vector<double> w(train.dim + 1, 0.0);
  const double lr = 0.1;
  for (int it = 0; it < 500; ++it) {
    std::vector<double> g(w.size(), 0.0);
    for (std::size_t i = 0; i < train.size(); ++i) {
      double z = w.back();
      for (std::size_t j = 0; j < train.dim; ++j) z += w[j] * train.row(i)[j];
      const double p = 1.0 / (1.0 + std::exp(-z));
      const double err = p - static_cast<double>(train.labels[i]);
      for (std::size_t j = 0; j < train.dim; ++j) g[j] += err * train.row(i)[j];
      g.back() += err;
    }
    for (std::size_t j = 0; j < w.size(); ++j) w[j] -= lr * g[j] / static_cast<double>(train.size());
  }
  std::size_t correct = 0;
  for (std::size_t i = 0; i < test.size(); ++i) {
    double z = w.back();
    for (std::size_t j = 0; j < test.dim; ++j) z += w[j] * test.row(i)[j];
    correct += (z > 0.0) == (test.labels[i] == 1) ? 1 : 0;
  }
  return static_cast<double>(correct) / static_cast<double>(test.size());
}

TEST(Synthetic, TwoClassesAreLinearlySeparable) {
  SyntheticSpec spec;
  spec.num_points = 2000;
  spec.dim = 2;
  spec.num_classes = 2;
  spec.margin = 6.0;
  spec.seed = 12;
  const LabeledData all = make_synthetic_classification(spec);
  std::vector<std::size_t> a(1000), b(1000);
  std::iota(a.begin(), a.end(), 0);
  std::iota(b.begin(), b.end(), 1000);
  EXPECT_GE(oracle_logistic_accuracy(all.subset(a), all.subset(b)), 0.99);
}

TEST(Synthetic, EmptyAndBalanced) {
  SyntheticSpec spec;
  spec.num_points = 0;
  EXPECT_TRUE(make_synthetic_classification(spec).empty());
  spec.num_points = 1003;
  spec.num_classes = 7;
  spec.dim = 3;
  const LabeledData d = make_synthetic_classification(spec);
  std::vector<int> counts(7, 0);
  for (int y : d.labels) ++counts[static_cast<std::size_t>(y)];
  EXPECT_LE(*std::max_element(counts.begin(), counts.end()) - *std::min_element(counts.begin(), counts.end()), 1);
  spec.margin = 0.0;
  EXPECT_THROW(make_synthetic_classification(spec), Error);
}

TEST(Synthetic, ClassMeansRespectTheMargin) {
  SyntheticSpec spec;
  spec.num_points = 40000;
  spec.dim = 4;
  spec.num_classes = 4;
  spec.margin = 3.0;
  spec.seed = 5;
  const LabeledData d = make_synthetic_classification(spec);
  std::vector<std::vector<double>> mean(4, std::vector<double>(4, 0.0));
  std::vector<double> n(4, 0.0);
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto c = static_cast<std::size_t>(d.labels[i]);
    for (std::size_t j = 0; j < 4; ++j) mean[c][j] += d.row(i)[j];
    n[c] += 1.0;
  }
  for (std::size_t c = 0; c < 4; ++c) {
    for (double& v : mean[c]) v /= n[c];
  }
  double min_dist = 1e300;
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = a + 1; b < 4; ++b) {
      double d2 = 0.0;
      for (std::size_t j = 0; j < 4; ++j) d2 += (mean[a][j] - mean[b][j]) * (mean[a][j] - mean[b][j]);
      min_dist = std::min(min_dist, std::sqrt(d2));
    }
  }
  // Sample means carry ~0.02 error per coordinate at 10^4 points per class.
  EXPECT_GE(min_dist, spec.margin - 0.1);
  EXPECT_LE(min_dist, spec.margin + 0.1);
}

TEST(CsvIo, RoundTrip) {
  const FederatedDataset ds = partition_iid(indexed(40, 3), 8, 2);
  const auto path = std::filesystem::temp_directory_path() / "pflsim_partition_roundtrip.csv";
  save_partition_csv(ds, path);
  const FederatedDataset back = load_partition_csv(path);
  ASSERT_EQ(back.user_ids(), ds.user_ids());
  for (const auto& id : ds.user_ids()) {
    EXPECT_EQ(back.user(id).data().features, ds.user(id).data().features);
    EXPECT_EQ(back.user(id).data().labels, ds.user(id).data().labels);
  }
  std::filesystem::remove(path);
}

TEST(CsvIo, MissingFileIsAnIoError) {
  try {
    load_partition_csv("/nonexistent/partition.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(Dataset, RejectsBadUsers) {
  LabeledData empty;
  empty.dim = 1;
  EXPECT_THROW(UserDataset("x", empty), Error);
  LabeledData bad = indexed(2);
  bad.features[0] = std::nan("");
  EXPECT_THROW(UserDataset("x", bad), Error);
  FederatedDataset ds;
  ds.add_user(UserDataset("a", indexed(2)));
  EXPECT_THROW(ds.add_user(UserDataset("a", indexed(2))), Error);
}

}  // namespace
}  // namespace pflsim::data
