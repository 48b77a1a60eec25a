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
#include <optional>
#include <string>
#include <vector>

#include "kidecomp/family.hpp"
#include "kidecomp/structure.hpp"

namespace kidecomp {

/// A family written in the form rho_s = gamma^dagger (sum_l p^(s,l)
/// rho_J^(s,l) (x) rho_K^(l)) gamma.
struct DecomposedFamily {
  Structure structure;
  /// p^(s,l): one row per state, one column per block.
  RealMatrix weights;
  /// rho_J^(s,l), indexed [s][l]; absent where p^(s,l) < tol.zero.
  std::vector<std::vector<std::optional<ComplexMatrix>>> j_states;
  /// rho_K^(l), shared by every state.
  std::vector<ComplexMatrix> k_states;
  /// Eigenvalues q_k^(l) of rho_K^(l), descending.
  std::vector<RealVector> k_spectra;
  /// The decomposed family itself.
  StateFamily family;
  /// Refinement index of each distinct structure visited by the pipeline.
  std::vector<long> refinement_trace;
  std::uint64_t seed_used = 0;

  Index state_count() const noexcept { return weights.rows(); }
  Index block_count() const noexcept { return structure.block_count(); }
  /// p_all^(l) = sum_s p_s p^(s,l) with the family's prior weights.
  RealVector block_weights() const;
  /// Ambient operator rebuilt from the stored components for state s.
  ComplexMatrix reassemble(Index s) const;
  /// max_s |rho_s - reassemble(s)|_F.
  double reassembly_residual() const;
};

/// Reads the components of `family` off a given structure: p^(s,l) is the
/// block trace, rho_J^(s,l) the normalized K-partial-trace, and rho_K^(l)
/// the normalized J-partial-trace of the block of rho_all. Works for any
/// structure, maximal or not; use reassembly_residual to see if it fits.
DecomposedFamily components_for(const StateFamily& family, const Structure& structure,
                                const Tolerances& tol = {});

/// Maximal structure of `family` and its components. Throws
/// kMaximalityCheckFailed if the result fails its own reassembly or
/// maximality check.
DecomposedFamily decompose(const StateFamily& family, std::uint64_t seed = 0,
                           const Tolerances& tol = {});

enum class MaximalityCondition { kReassembly, kIrreducible, kNonIsomorphic };

struct MaximalityViolation {
  MaximalityCondition condition;
  Index block = -1;
  Index other_block = -1;
  double value = 0.0;
};

struct MaximalityReport {
  bool ok = true;
  std::vector<MaximalityViolation> violated;

  bool has(MaximalityCondition c) const;
};

/// Checks (i) reassembly within 1e-7, (ii) trivial commutant of each block's
/// J-family and (iii) no intertwiner between the normalized J-families of
/// two distinct blocks with equal d_J.
MaximalityReport check_maximal(const DecomposedFamily& decomp, const Tolerances& tol = {});

/// Product decomposition for the family {rho_s (x) sigma_t} with blocks
/// ordered (l1, l2) lexicographically.
DecomposedFamily tensor_structure(const DecomposedFamily& a, const DecomposedFamily& b,
                                  const Tolerances& tol = {});

struct ProbeReport {
  int probes = 0;
  int splits_found = 0;
  std::string first_witness;
};

/// Randomized search for a further refinement. Each probe draws a state, a
/// block and random vectors in H_J, then tests whether the classical split
/// or the coherent pairing step would still refine the structure. A maximal
/// structure yields no splits.
ProbeReport probe_refinement(const DecomposedFamily& decomp, int probes, std::uint64_t seed,
                             const Tolerances& tol = {});

}  // namespace kidecomp
