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

#include "pflsim/core/context.h"

#include "pflsim/core/error.h"

namespace pflsim {

std::string_view population_name(Population p) {
  return p == Population::kTrain ? "train" : "val";
}

void CentralContext::validate() const {
  if (cohort_size < 1) throw Error(ErrorCode::kInvalidArgument, "cohort_size must be >= 1");
  if ((population == Population::kTrain) != do_training()) {
    throw Error(ErrorCode::kInvalidArgument,
                "local training parameters must be present exactly for training contexts");
  }
  if (local_params) {
    if (local_params->batch_size < 1) throw Error(ErrorCode::kInvalidArgument, "batch_size must be >= 1");
    if (local_params->num_epochs < 0) throw Error(ErrorCode::kInvalidArgument, "num_epochs must be >= 0");
    if (!(local_params->learning_rate > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "local learning rate must be > 0");
    }
  }
}

}  // namespace pflsim
