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

#include "pflsim/data/synthetic.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "pflsim/core/error.h"
#include "pflsim/core/seeding.h"

namespace pflsim::data {

LabeledData make_synthetic_classification(const SyntheticSpec& spec) {
  if (!(spec.margin > 0.0)) throw Error(ErrorCode::kInvalidArgument, "margin must be > 0");
  if (spec.num_classes < 1 || spec.dim < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one class and one dimension");
  }
  LabeledData out;
  out.dim = spec.dim;
  if (spec.num_points == 0) return out;

  const auto k = static_cast<std::size_t>(spec.num_classes);
  Rng rng(derive_seed(spec.seed, SeedStream::kData, 0, "synthetic"));
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<double> centers(k * spec.dim);
  for (double& c : centers) c = normal(rng);
  if (k > 1) {
    double min_dist = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = a + 1; b < k; ++b) {
        double d2 = 0.0;
        for (std::size_t j = 0; j < spec.dim; ++j) {
          const double diff = centers[a * spec.dim + j] - centers[b * spec.dim + j];
          d2 += diff * diff;
        }
        min_dist = std::min(min_dist, std::sqrt(d2));
      }
    }
    // Scale slightly past the margin so rounding never lands below it.
    const double factor = spec.margin / min_dist * (1.0 + 1e-12);
    for (double& c : centers) c *= factor;
  }

  std::vector<int> labels(spec.num_points);
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = static_cast<int>(i % k);
  std::shuffle(labels.begin(), labels.end(), rng);

  out.features.resize(spec.num_points * spec.dim);
  out.labels = std::move(labels);
  for (std::size_t i = 0; i < spec.num_points; ++i) {
    const auto c = static_cast<std::size_t>(out.labels[i]);
    for (std::size_t j = 0; j < spec.dim; ++j) {
      out.features[i * spec.dim + j] = centers[c * spec.dim + j] + normal(rng);
    }
  }
  return out;
}

}  // namespace pflsim::data
