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

#include "pflsim/engine/postprocessor.h"

#include "pflsim/core/error.h"

namespace pflsim::engine {

void validate_pipeline(std::span<const std::shared_ptr<Postprocessor>> pipeline) {
  bool clipped = false;
  std::string mechanism;
  for (const auto& p : pipeline) {
    if (!p) throw Error(ErrorCode::kInvalidArgument, "null postprocessor in pipeline");
    switch (p->role()) {
      case Postprocessor::Role::kClip:
        if (!mechanism.empty()) {
          throw Error(ErrorCode::kNotClippedUpstream,
                      "clip '" + p->name() + "' is declared after mechanism '" + mechanism + "'");
        }
        clipped = true;
        break;
      case Postprocessor::Role::kMechanism:
        if (!clipped) {
          throw Error(ErrorCode::kNotClippedUpstream,
                      "mechanism '" + p->name() + "' has no clipping postprocessor before it");
        }
        mechanism = p->name();
        break;
      case Postprocessor::Role::kTransform:
        break;
    }
  }
}

}  // namespace pflsim::engine
