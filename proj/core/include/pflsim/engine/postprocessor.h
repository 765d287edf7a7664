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

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pflsim/algorithms/algorithm.h"
#include "pflsim/core/context.h"
#include "pflsim/core/metrics.h"
#include "pflsim/core/statistics.h"

namespace pflsim::engine {

struct UserPostprocessContext {
  const CentralContext& context;
  std::string_view user_id;
  const algorithms::UserAux& aux;
};

struct ServerPostprocessContext {
  const CentralContext& context;
  // Number of users whose statistics went into the aggregate.
  std::int64_t num_contributors = 0;
  // Aggregated user metrics of the context; postprocessors may add to it.
  Metrics& metrics;
};

// Transform applied to each user's statistics (declared order, on the
// workers) and to the reduced aggregate (reversed order, once).
class Postprocessor {
 public:
  enum class Role { kTransform, kClip, kMechanism };

  virtual ~Postprocessor() = default;
  virtual std::string name() const = 0;
  virtual Role role() const { return Role::kTransform; }

  // Called concurrently from worker threads; must not mutate shared state.
  virtual void postprocess_one_user(Statistics& /*statistics*/, const UserPostprocessContext& /*ctx*/,
                                    Metrics& /*user_metrics*/) const {}
  // Called once per context after worker_reduce, single-threaded.
  virtual void postprocess_server(Statistics& /*aggregate*/, ServerPostprocessContext& /*ctx*/) {}
};

using PostprocessorList = std::vector<std::shared_ptr<Postprocessor>>;

// Every mechanism needs a clip declared before it, and no clip may follow a
// mechanism: the sensitivity must not change after clipping. Throws
// kNotClippedUpstream otherwise.
void validate_pipeline(std::span<const std::shared_ptr<Postprocessor>> pipeline);

}  // namespace pflsim::engine
