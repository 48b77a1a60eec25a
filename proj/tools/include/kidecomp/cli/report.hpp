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
#include <string>
#include <vector>

#include "kidecomp/applications.hpp"
#include "kidecomp/cli/io.hpp"
#include "kidecomp/decompose.hpp"

namespace kidecomp::cli {

Json tolerances_to_json(const Tolerances& tol);
Json blocks_to_json(const DecomposedFamily& decomp);
Json entropy_to_json(const EntropyReport& e);

/// Full ReportFile for a decomposition: structure, weights, entropies,
/// residuals, gamma and the per-block components.
Json decompose_report(const DecomposedFamily& decomp, const MaximalityReport& maximal,
                      const Tolerances& tol, std::uint64_t seed);

/// Rebuilds rho_s from the blocks, weights, gamma and components of a
/// decompose report.
std::vector<ComplexMatrix> reassemble_from_report(const Json& report);

/// Indented plain-text rendering of any report.
std::string render_text(const Json& report);

}  // namespace kidecomp::cli
