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

#include "pflsim/core/error.h"

namespace pflsim {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIncompatibleShapes: return "IncompatibleShapes";
    case ErrorCode::kZeroWeight: return "ZeroWeight";
    case ErrorCode::kEmptyCohort: return "EmptyCohort";
    case ErrorCode::kTooFewPoints: return "TooFewPoints";
    case ErrorCode::kInsufficientData: return "InsufficientData";
    case ErrorCode::kCohortTooLarge: return "CohortTooLarge";
    case ErrorCode::kZeroLocalSteps: return "ZeroLocalSteps";
    case ErrorCode::kMissingAggregate: return "MissingAggregate";
    case ErrorCode::kNotClippedUpstream: return "NotClippedUpstream";
    case ErrorCode::kUnachievable: return "Unachievable";
    case ErrorCode::kUndefined: return "Undefined";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kConfig: return "Config";
  }
  return "Unknown";
}

}  // namespace pflsim
