// Copyright 2026 The kidecomp Authors
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

namespace kidecomp {

enum class ErrorCode {
  kDimensionMismatch,
  kNotHermitian,
  kNotPositive,
  kNotNormalized,
  kNoConvergence,
  kZeroOperator,
  kZeroOffBlock,
  kBasisOverflow,
  kSupportDeficient,
  kDegenerateSample,
  kNotInvariant,
  kEmptyFamily,
  kBadWeights,
  kStatesIdentical,
  kMaximalityCheckFailed,
  kNotPreserved,
  kHypothesisFailed,
  kKStateNotFixed,
  kNotTracePreserving,
  kNotBroadcastable,
  kInvalidTolerance,
  kParseError,
  kValidationError,
};

std::string_view error_code_name(ErrorCode code);

/// True for error codes that signal invalid input rather than a numerical
/// breakdown. The command-line front-end maps the two groups to different
/// exit codes.
bool is_validation_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& message);

}  // namespace kidecomp
