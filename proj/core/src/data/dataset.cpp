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

#include "pflsim/data/dataset.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "pflsim/core/error.h"

namespace pflsim::data {

void LabeledData::push_back(std::span<const double> x, int label) {
  if (x.size() != dim) throw Error(ErrorCode::kIncompatibleShapes, "feature row has wrong dimension");
  features.insert(features.end(), x.begin(), x.end());
  labels.push_back(label);
}

LabeledData LabeledData::subset(std::span<const std::size_t> indices) const {
  LabeledData out;
  out.dim = dim;
  out.features.reserve(indices.size() * dim);
  out.labels.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(row(i), labels[i]);
  return out;
}

int LabeledData::num_classes() const {
  if (labels.empty()) return 0;
  return *std::max_element(labels.begin(), labels.end()) + 1;
}

UserDataset::UserDataset(std::string user_id, LabeledData data)
    : user_id_(std::move(user_id)), data_(std::move(data)) {
  if (data_.empty()) throw Error(ErrorCode::kInvalidArgument, "user '" + user_id_ + "' has no data");
  if (data_.features.size() != data_.size() * data_.dim) {
    throw Error(ErrorCode::kIncompatibleShapes, "user '" + user_id_ + "' feature matrix is ragged");
  }
  for (double x : data_.features) {
    if (!std::isfinite(x)) throw Error(ErrorCode::kInvalidArgument, "non-finite feature for '" + user_id_ + "'");
  }
}

void FederatedDataset::add_user(UserDataset user) {
  const std::string id = user.user_id();
  if (!users_.emplace(id, std::move(user)).second) {
    throw Error(ErrorCode::kInvalidArgument, "duplicate user id '" + id + "'");
  }
}

const UserDataset& FederatedDataset::user(const std::string& user_id) const {
  auto it = users_.find(user_id);
  if (it == users_.end()) throw Error(ErrorCode::kInvalidArgument, "unknown user '" + user_id + "'");
  return it->second;
}

std::vector<std::string> FederatedDataset::user_ids() const {
  std::vector<std::string> ids;
  ids.reserve(users_.size());
  for (const auto& [id, u] : users_) ids.push_back(id);
  return ids;
}

std::size_t FederatedDataset::total_points() const {
  std::size_t n = 0;
  for (const auto& [id, u] : users_) n += u.size();
  return n;
}

LabeledData FederatedDataset::pooled() const {
  LabeledData out;
  if (users_.empty()) return out;
  out.dim = users_.begin()->second.data().dim;
  for (const auto& [id, u] : users_) {
    out.features.insert(out.features.end(), u.data().features.begin(), u.data().features.end());
    out.labels.insert(out.labels.end(), u.data().labels.begin(), u.data().labels.end());
  }
  return out;
}

std::string make_user_id(std::size_t index, Population population) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%c%06zu", population == Population::kTrain ? 'u' : 'v', index);
  return buf;
}

}  // namespace pflsim::data
