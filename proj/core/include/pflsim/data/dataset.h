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

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "pflsim/core/context.h"

namespace pflsim::data {

// Row-major n x dim feature matrix with one class label per row.
struct LabeledData {
  std::size_t dim = 0;
  std::vector<double> features;
  std::vector<int> labels;

  std::size_t size() const { return labels.size(); }
  bool empty() const { return labels.empty(); }
  std::span<const double> row(std::size_t i) const {
    return {features.data() + i * dim, dim};
  }
  void push_back(std::span<const double> x, int label);
  LabeledData subset(std::span<const std::size_t> indices) const;
  int num_classes() const;  // 1 + max label, 0 when empty
};

class UserDataset {
 public:
  UserDataset(std::string user_id, LabeledData data);

  const std::string& user_id() const { return user_id_; }
  const LabeledData& data() const { return data_; }
  std::size_t size() const { return data_.size(); }
  // Scheduling weight; equals the number of datapoints.
  double weight() const { return static_cast<double>(data_.size()); }

 private:
  std::string user_id_;
  LabeledData data_;
};

// A samplable population of users, iterated in user_id order.
class FederatedDataset {
 public:
  explicit FederatedDataset(Population population = Population::kTrain)
      : population_(population) {}

  Population population() const { return population_; }
  void add_user(UserDataset user);
  const UserDataset& user(const std::string& user_id) const;
  bool contains(const std::string& user_id) const { return users_.count(user_id) > 0; }
  std::size_t num_users() const { return users_.size(); }
  std::vector<std::string> user_ids() const;
  std::size_t total_points() const;
  const std::map<std::string, UserDataset>& users() const { return users_; }
  // Points discarded by the partitioner that built this dataset.
  std::size_t dropped_points = 0;

  // Concatenation of all users' data in user_id order.
  LabeledData pooled() const;

 private:
  Population population_;
  std::map<std::string, UserDataset> users_;
};

// "u000042" for training users, "v000042" for validation users.
std::string make_user_id(std::size_t index, Population population = Population::kTrain);

}  // namespace pflsim::data
