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

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kidecomp/channels.hpp"
#include "kidecomp/family.hpp"

namespace kidecomp::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kFormatVersion = "1";

/// Reads and parses a JSON document. Throws kParseError naming the file and
/// the byte offset of a syntax error.
Json load_json(const std::string& path);
Json parse_json_text(const std::string& text, const std::string& source);

/// Serializes with every number at 17 significant digits.
std::string dump(const Json& j, bool pretty = true);

/// Matrix as rows of [re, im] pairs.
Json matrix_to_json(const ComplexMatrix& m);
Json real_matrix_to_json(const RealMatrix& m);
ComplexMatrix matrix_from_json(const Json& j, const std::string& where, Index rows = -1,
                               Index cols = -1);

/// Applies the optional "tolerances" object of a family file on top of
/// `base`.
Tolerances file_tolerances(const Json& doc, const std::string& source, Tolerances base = {});

/// Builds the family described by a FamilyFile document. Matrix failures
/// raise kValidationError naming the offending state label.
StateFamily family_from_json(const Json& doc, const std::string& source, const Tolerances& tol);
Json family_to_json(const StateFamily& family);

/// Kraus file: {"version", "input_dim", "output_dim", "kraus": [matrix, ...]}.
KrausChannel kraus_from_json(const Json& doc, const std::string& source);
Json kraus_to_json(const KrausChannel& ch);

/// "name=value" as given to --tol. Throws kInvalidTolerance.
void apply_tolerance_override(Tolerances& tol, const std::string& assignment);

}  // namespace kidecomp::cli
