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

#include <stdexcept>
#include <string>
#include <string_view>

namespace pflsim {

enum class ErrorCode {
  kInvalidArgument,
  kIncompatibleShapes,
  kZeroWeight,
  kEmptyCohort,
  kTooFewPoints,
  kInsufficientData,
  kCohortTooLarge,
  kZeroLocalSteps,
  kMissingAggregate,
  kNotClippedUpstream,
  kUnachievable,
  kUndefined,
  kIo,
  kConfig,
};

std::string_view error_code_name(ErrorCode code);

// Exception type for every recoverable failure in the library. The code is
// stable and is what callers (and the CLI exit-code mapping) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code),
        message_(message) {}

  ErrorCode code() const noexcept { return code_; }
  // The message without the code prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace pflsim
