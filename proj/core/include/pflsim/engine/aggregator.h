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

#include <optional>
#include <span>

#include "pflsim/core/statistics.h"

namespace pflsim::engine {

// Accumulation within a worker (f) and reduction across workers (g). For
// every S_a, S_b, d a concrete aggregator must satisfy
//   g({f(S_a, d), S_b}) == g({f(S_b, d), S_a}) == f(g({S_a, S_b}), d)
// so results do not depend on how users are spread over workers.
class Aggregator {
 public:
  using State = std::optional<Statistics>;

  virtual ~Aggregator() = default;
  virtual State zero() const { return std::nullopt; }
  virtual State accumulate(State state, const Statistics& user) const = 0;
  virtual State worker_reduce(std::span<const State> worker_states) const = 0;
};

// f(S, d) = S + d, g = sum.
class SumAggregator final : public Aggregator {
 public:
  State accumulate(State state, const Statistics& user) const override;
  State worker_reduce(std::span<const State> worker_states) const override;
};

// Sum in worker order; empty (null) states are skipped. Throws
// kIncompatibleShapes on mismatched states.
Aggregator::State worker_reduce_sum(std::span<const Aggregator::State> worker_states);

}  // namespace pflsim::engine
