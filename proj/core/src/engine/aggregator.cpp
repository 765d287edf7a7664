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

#include "pflsim/engine/aggregator.h"

namespace pflsim::engine {

Aggregator::State SumAggregator::accumulate(State state, const Statistics& user) const {
  if (!state) return user;
  *state += user;
  return state;
}

Aggregator::State SumAggregator::worker_reduce(std::span<const State> worker_states) const {
  return worker_reduce_sum(worker_states);
}

Aggregator::State worker_reduce_sum(std::span<const Aggregator::State> worker_states) {
  Aggregator::State total;
  for (const auto& s : worker_states) {
    if (!s) continue;
    if (!total) {
      total = *s;
    } else {
      *total += *s;
    }
  }
  return total;
}

}  // namespace pflsim::engine
