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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace kidecomp::cli {

enum ExitCode : int { kExitOk = 0, kExitFails = 1, kExitValidation = 2, kExitNumerical = 3 };

struct RunOptions {
  std::uint64_t seed = 0;
  std::vector<std::string> tolerances;  // "name=value"
  std::string output;                   // empty: stdout
  std::string format = "json";
};

struct CheckInputs {
  std::string kind;  // broadcast | imprint | clone | channel
  std::string input;
  std::string kraus;
  std::string sigma;
  long dim_a = 0;
  long dim_b = 0;
};

struct EntropyInputs {
  std::string input;
  std::string weights;              // comma separated, optional
  std::vector<std::string> tensor;  // two family files, optional
};

/// Each command writes its report and returns the exit code. Errors go to
/// `err` as one line and map to 2 (validation, parsing) or 3 (numerics).
int run_decompose(const std::string& input, const RunOptions& opts, std::ostream& out,
                  std::ostream& err);
int run_check(const CheckInputs& in, const RunOptions& opts, std::ostream& out, std::ostream& err);
int run_entropy(const EntropyInputs& in, const RunOptions& opts, std::ostream& out,
                std::ostream& err);

/// Seed from the KIDECOMP_SEED environment variable, 0 when unset. Throws
/// kValidationError for a malformed value.
std::uint64_t env_seed();
std::uint64_t parse_seed(const std::string& text);

}  // namespace kidecomp::cli
