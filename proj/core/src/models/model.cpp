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

#include "pflsim/models/model.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "pflsim/core/error.h"
#include "pflsim/core/seeding.h"

namespace pflsim::models {

namespace {

// In-place softmax; returns log-sum-exp of the input logits.
double softmax_inplace(std::span<double> z) {
  const double zmax = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double& v : z) {
    v = std::exp(v - zmax);
    sum += v;
  }
  for (double& v : z) v /= sum;
  return zmax + std::log(sum);
}

std::size_t argmax(std::span<const double> z) {
  return static_cast<std::size_t>(std::max_element(z.begin(), z.end()) - z.begin());
}

void fill_uniform(std::vector<double>& v, double bound, Rng& rng) {
  std::uniform_real_distribution<double> dist(-bound, bound);
  for (double& x : v) x = dist(rng);
}

void check_dim(const data::LabeledData& data, std::size_t dim) {
  if (!data.empty() && data.dim != dim) {
    throw Error(ErrorCode::kIncompatibleShapes, "data dimension " + std::to_string(data.dim) +
                                                    " != model dimension " + std::to_string(dim));
  }
}

// logits[c] = bias[c] + sum_j weight[c * in + j] * x[j]
void affine(const std::vector<double>& weight, const std::vector<double>& bias,
            std::span<const double> x, std::span<double> out) {
  const std::size_t in = x.size();
  for (std::size_t c = 0; c < out.size(); ++c) {
    double acc = bias[c];
    const double* w = weight.data() + c * in;
    for (std::size_t j = 0; j < in; ++j) acc += w[j] * x[j];
    out[c] = acc;
  }
}

}  // namespace

LogisticRegression::LogisticRegression(std::size_t dim, int num_classes)
    : dim_(dim), classes_(static_cast<std::size_t>(num_classes)) {
  if (dim == 0 || num_classes < 2) {
    throw Error(ErrorCode::kInvalidArgument, "logistic regression needs dim >= 1 and >= 2 classes");
  }
}

ModelParams LogisticRegression::init_params(std::uint64_t) const {
  return {{"bias", std::vector<double>(classes_, 0.0)},
          {"weight", std::vector<double>(classes_ * dim_, 0.0)}};
}

double LogisticRegression::loss_and_gradient(const ModelParams& params,
                                             const data::LabeledData& data,
                                             std::span<const std::size_t> rows,
                                             ModelParams& grad) const {
  check_dim(data, dim_);
  const auto& w = params.at("weight");
  const auto& b = params.at("bias");
  grad = zeros_like(params);
  auto& gw = grad.at("weight");
  auto& gb = grad.at("bias");
  std::vector<double> z(classes_);
  double loss = 0.0;
  for (std::size_t i : rows) {
    const auto x = data.row(i);
    const auto y = static_cast<std::size_t>(data.labels[i]);
    affine(w, b, x, z);
    const double zy = z[y];
    loss += softmax_inplace(z) - zy;
    z[y] -= 1.0;
    for (std::size_t c = 0; c < classes_; ++c) {
      gb[c] += z[c];
      double* g = gw.data() + c * dim_;
      for (std::size_t j = 0; j < dim_; ++j) g[j] += z[c] * x[j];
    }
  }
  if (rows.empty()) return 0.0;
  const double inv = 1.0 / static_cast<double>(rows.size());
  for (auto& [name, g] : grad) {
    for (double& v : g) v *= inv;
  }
  return loss * inv;
}

EvalResult LogisticRegression::evaluate(const ModelParams& params,
                                        const data::LabeledData& data) const {
  check_dim(data, dim_);
  const auto& w = params.at("weight");
  const auto& b = params.at("bias");
  EvalResult r;
  std::vector<double> z(classes_);
  for (std::size_t i = 0; i < data.size(); ++i) {
    affine(w, b, data.row(i), z);
    const auto y = static_cast<std::size_t>(data.labels[i]);
    const double zy = z[y];
    const std::size_t pred = argmax(z);
    r.loss_sum += softmax_inplace(z) - zy;
    r.correct += pred == y ? 1 : 0;
    ++r.count;
  }
  return r;
}

Mlp::Mlp(std::size_t dim, std::size_t hidden, int num_classes)
    : dim_(dim), hidden_(hidden), classes_(static_cast<std::size_t>(num_classes)) {
  if (dim == 0 || hidden == 0 || num_classes < 2) {
    throw Error(ErrorCode::kInvalidArgument, "mlp needs dim, hidden >= 1 and >= 2 classes");
  }
}

ModelParams Mlp::init_params(std::uint64_t seed) const {
  Rng rng(derive_seed(seed, SeedStream::kInit, 0, "mlp"));
  ModelParams p{{"hidden.bias", std::vector<double>(hidden_)},
                {"hidden.weight", std::vector<double>(hidden_ * dim_)},
                {"output.bias", std::vector<double>(classes_)},
                {"output.weight", std::vector<double>(classes_ * hidden_)}};
  const double b1 = 1.0 / std::sqrt(static_cast<double>(dim_));
  const double b2 = 1.0 / std::sqrt(static_cast<double>(hidden_));
  fill_uniform(p.at("hidden.weight"), b1, rng);
  fill_uniform(p.at("hidden.bias"), b1, rng);
  fill_uniform(p.at("output.weight"), b2, rng);
  fill_uniform(p.at("output.bias"), b2, rng);
  return p;
}

double Mlp::loss_and_gradient(const ModelParams& params, const data::LabeledData& data,
                              std::span<const std::size_t> rows, ModelParams& grad) const {
  check_dim(data, dim_);
  const auto& w1 = params.at("hidden.weight");
  const auto& b1 = params.at("hidden.bias");
  const auto& w2 = params.at("output.weight");
  const auto& b2 = params.at("output.bias");
  grad = zeros_like(params);
  auto& gw1 = grad.at("hidden.weight");
  auto& gb1 = grad.at("hidden.bias");
  auto& gw2 = grad.at("output.weight");
  auto& gb2 = grad.at("output.bias");

  std::vector<double> pre(hidden_), h(hidden_), z(classes_), dh(hidden_);
  double loss = 0.0;
  for (std::size_t i : rows) {
    const auto x = data.row(i);
    const auto y = static_cast<std::size_t>(data.labels[i]);
    affine(w1, b1, x, pre);
    for (std::size_t k = 0; k < hidden_; ++k) h[k] = pre[k] > 0.0 ? pre[k] : 0.0;
    affine(w2, b2, h, z);
    const double zy = z[y];
    loss += softmax_inplace(z) - zy;
    z[y] -= 1.0;
    std::fill(dh.begin(), dh.end(), 0.0);
    for (std::size_t c = 0; c < classes_; ++c) {
      gb2[c] += z[c];
      const double* w = w2.data() + c * hidden_;
      double* g = gw2.data() + c * hidden_;
      for (std::size_t k = 0; k < hidden_; ++k) {
        g[k] += z[c] * h[k];
        dh[k] += z[c] * w[k];
      }
    }
    for (std::size_t k = 0; k < hidden_; ++k) {
      if (pre[k] <= 0.0) continue;
      gb1[k] += dh[k];
      double* g = gw1.data() + k * dim_;
      for (std::size_t j = 0; j < dim_; ++j) g[j] += dh[k] * x[j];
    }
  }
  if (rows.empty()) return 0.0;
  const double inv = 1.0 / static_cast<double>(rows.size());
  for (auto& [name, g] : grad) {
    for (double& v : g) v *= inv;
  }
  return loss * inv;
}

EvalResult Mlp::evaluate(const ModelParams& params, const data::LabeledData& data) const {
  check_dim(data, dim_);
  const auto& w1 = params.at("hidden.weight");
  const auto& b1 = params.at("hidden.bias");
  const auto& w2 = params.at("output.weight");
  const auto& b2 = params.at("output.bias");
  EvalResult r;
  std::vector<double> h(hidden_), z(classes_);
  for (std::size_t i = 0; i < data.size(); ++i) {
    affine(w1, b1, data.row(i), h);
    for (double& v : h) v = v > 0.0 ? v : 0.0;
    affine(w2, b2, h, z);
    const auto y = static_cast<std::size_t>(data.labels[i]);
    const double zy = z[y];
    const std::size_t pred = argmax(z);
    r.loss_sum += softmax_inplace(z) - zy;
    r.correct += pred == y ? 1 : 0;
    ++r.count;
  }
  return r;
}

ModelParams QuadraticModel::init_params(std::uint64_t) const {
  return {{"theta", std::vector<double>(dim_, 0.0)}};
}

double QuadraticModel::loss_and_gradient(const ModelParams& params,
                                         const data::LabeledData& data,
                                         std::span<const std::size_t> rows,
                                         ModelParams& grad) const {
  check_dim(data, dim_);
  const auto& theta = params.at("theta");
  grad = zeros_like(params);
  auto& g = grad.at("theta");
  double loss = 0.0;
  for (std::size_t i : rows) {
    const auto x = data.row(i);
    for (std::size_t j = 0; j < dim_; ++j) {
      const double r = theta[j] - x[j];
      loss += 0.5 * r * r;
      g[j] += r;
    }
  }
  if (rows.empty()) return 0.0;
  const double inv = 1.0 / static_cast<double>(rows.size());
  for (double& v : g) v *= inv;
  return loss * inv;
}

EvalResult QuadraticModel::evaluate(const ModelParams& params,
                                    const data::LabeledData& data) const {
  check_dim(data, dim_);
  const auto& theta = params.at("theta");
  EvalResult r;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto x = data.row(i);
    for (std::size_t j = 0; j < dim_; ++j) r.loss_sum += 0.5 * (theta[j] - x[j]) * (theta[j] - x[j]);
    ++r.count;
  }
  return r;
}

}  // namespace pflsim::models
