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

#include "kidecomp/error.hpp"

namespace kidecomp {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNotHermitian: return "NotHermitian";
    case ErrorCode::kNotPositive: return "NotPositive";
    case ErrorCode::kNotNormalized: return "NotNormalized";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kZeroOperator: return "ZeroOperator";
    case ErrorCode::kZeroOffBlock: return "ZeroOffBlock";
    case ErrorCode::kBasisOverflow: return "BasisOverflow";
    case ErrorCode::kSupportDeficient: return "SupportDeficient";
    case ErrorCode::kDegenerateSample: return "DegenerateSample";
    case ErrorCode::kNotInvariant: return "NotInvariant";
    case ErrorCode::kEmptyFamily: return "EmptyFamily";
    case ErrorCode::kBadWeights: return "BadWeights";
    case ErrorCode::kStatesIdentical: return "StatesIdentical";
    case ErrorCode::kMaximalityCheckFailed: return "MaximalityCheckFailed";
    case ErrorCode::kNotPreserved: return "NotPreserved";
    case ErrorCode::kHypothesisFailed: return "HypothesisFailed";
    case ErrorCode::kKStateNotFixed: return "KStateNotFixed";
    case ErrorCode::kNotTracePreserving: return "NotTracePreserving";
    case ErrorCode::kNotBroadcastable: return "NotBroadcastable";
    case ErrorCode::kInvalidTolerance: return "InvalidTolerance";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kValidationError: return "ValidationError";
  }
  return "Unknown";
}

bool is_validation_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kNotHermitian:
    case ErrorCode::kNotPositive:
    case ErrorCode::kNotNormalized:
    case ErrorCode::kEmptyFamily:
    case ErrorCode::kBadWeights:
    case ErrorCode::kNotTracePreserving:
    case ErrorCode::kInvalidTolerance:
    case ErrorCode::kParseError:
    case ErrorCode::kValidationError:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code) {}

void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace kidecomp
