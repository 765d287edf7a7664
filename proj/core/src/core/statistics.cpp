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

#include "pflsim/core/statistics.h"

#include <cmath>

#include "pflsim/core/error.h"

namespace pflsim {

bool same_shape(const NamedVectors& a, const NamedVectors& b) {
  if (a.size() != b.size()) return false;
  for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib) {
    if (ia->first != ib->first || ia->second.size() != ib->second.size()) return false;
  }
  return true;
}

std::size_t total_size(const NamedVectors& v) {
  std::size_t n = 0;
  for (const auto& [name, values] : v) n += values.size();
  return n;
}

double l2_norm(const NamedVectors& v) {
  double sum_sq = 0.0;
  for (const auto& [name, values] : v) {
    for (double x : values) sum_sq += x * x;
  }
  return std::sqrt(sum_sq);
}

NamedVectors zeros_like(const NamedVectors& v) {
  NamedVectors out;
  for (const auto& [name, values] : v) out.emplace(name, std::vector<double>(values.size(), 0.0));
  return out;
}

Statistics::Statistics(NamedVectors entries, double weight) : entries_(std::move(entries)) {
  set_weight(weight);
}

Statistics Statistics::zeros_like(const Statistics& other) {
  return Statistics(pflsim::zeros_like(other.entries_), 0.0);
}

const std::vector<double>& Statistics::at(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) {
    throw Error(ErrorCode::kInvalidArgument, "no statistics entry named '" + name + "'");
  }
  return it->second;
}

void Statistics::set_weight(double weight) {
  if (!(weight >= 0.0) || !std::isfinite(weight)) {
    throw Error(ErrorCode::kInvalidArgument, "statistics weight must be finite and >= 0");
  }
  weight_ = weight;
}

void Statistics::scale(double factor) {
  for (auto& [name, values] : entries_) {
    for (double& x : values) x *= factor;
  }
}

Statistics Statistics::reweighted(double new_weight) const {
  Statistics out = *this;
  if (weight_ == 0.0) {
    if (l2_norm() != 0.0) {
      throw Error(ErrorCode::kZeroWeight, "cannot reweight non-zero statistics of weight 0");
    }
  } else {
    out.scale(new_weight / weight_);
  }
  out.set_weight(new_weight);
  return out;
}

Statistics& Statistics::operator+=(const Statistics& other) {
  if (!compatible_with(other)) {
    throw Error(ErrorCode::kIncompatibleShapes,
                "statistics differ in entry names or lengths");
  }
  auto it = other.entries_.begin();
  for (auto& [name, values] : entries_) {
    const auto& rhs = (it++)->second;
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += rhs[i];
  }
  weight_ += other.weight_;
  return *this;
}

void Statistics::check_invariants() const {
  bool all_zero = true;
  for (const auto& [name, values] : entries_) {
    for (double x : values) {
      if (!std::isfinite(x)) {
        throw Error(ErrorCode::kInvalidArgument, "non-finite element in entry '" + name + "'");
      }
      all_zero = all_zero && x == 0.0;
    }
  }
  if (weight_ < 0.0) throw Error(ErrorCode::kInvalidArgument, "negative weight");
  if (weight_ == 0.0 && !all_zero) {
    throw Error(ErrorCode::kInvalidArgument, "zero weight with non-zero entries");
  }
}

Statistics accumulate(const Statistics& a, const Statistics& b) {
  Statistics out = a;
  out += b;
  return out;
}

Statistics average(const Statistics& s) {
  if (s.weight() == 0.0) throw Error(ErrorCode::kZeroWeight, "cannot average statistics of weight 0");
  Statistics out = s;
  out.scale(1.0 / s.weight());
  out.set_weight(1.0);
  return out;
}

}  // namespace pflsim
