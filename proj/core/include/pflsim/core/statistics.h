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

namespace pflsim {

// Ordered name -> flat vector map. Model parameters and model updates both
// use this layout; layers are flattened at the model boundary.
using NamedVectors = std::map<std::string, std::vector<double>>;

bool same_shape(const NamedVectors& a, const NamedVectors& b);
std::size_t total_size(const NamedVectors& v);
double l2_norm(const NamedVectors& v);
NamedVectors zeros_like(const NamedVectors& v);

// Weighted statistics: the unit of aggregation. Entries hold weight-scaled
// sums, so `average()` (entries / weight) recovers the weighted mean.
class Statistics {
 public:
  Statistics() = default;
  Statistics(NamedVectors entries, double weight);

  static Statistics zeros_like(const Statistics& other);

  const NamedVectors& entries() const noexcept { return entries_; }
  NamedVectors& mutable_entries() noexcept { return entries_; }
  const std::vector<double>& at(const std::string& name) const;
  bool contains(const std::string& name) const { return entries_.count(name) > 0; }
  double weight() const noexcept { return weight_; }
  void set_weight(double weight);

  std::size_t dimension() const { return total_size(entries_); }
  double l2_norm() const { return pflsim::l2_norm(entries_); }
  bool compatible_with(const Statistics& other) const {
    return same_shape(entries_, other.entries_);
  }

  // Multiplies every element by `factor`; the weight is left alone.
  void scale(double factor);
  // Rescales entries by new_weight / weight() and sets the new weight.
  // With a zero current weight the entries must already be zero.
  Statistics reweighted(double new_weight) const;
  // In-place elementwise add plus weight sum.
  Statistics& operator+=(const Statistics& other);

  // Throws kInvalidArgument if any element is non-finite, the weight is
  // negative, or a zero weight carries non-zero entries.
  void check_invariants() const;

  friend bool operator==(const Statistics&, const Statistics&) = default;

 private:
  NamedVectors entries_;
  double weight_ = 0.0;
};

Statistics accumulate(const Statistics& a, const Statistics& b);
Statistics average(const Statistics& s);

}  // namespace pflsim
