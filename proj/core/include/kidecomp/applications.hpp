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
#include <span>
#include <string>
#include <vector>

#include "kidecomp/decompose.hpp"

namespace kidecomp {

struct BroadcastReport {
  bool ok = false;
  /// First block with d_J >= 2, or -1.
  Index witness_block = -1;
  /// max_{s,t} |[rho_s, rho_t]|_F and the verdict of the commutator test.
  double max_commutator = 0.0;
  bool commuting = false;
};

/// ok iff every block of the maximal structure has d_J = 1.
BroadcastReport is_broadcastable(const StateFamily& family, std::uint64_t seed = 0,
                                 const Tolerances& tol = {});

enum class BroadcastMode { kProduct, kClassical, kQuantum };

const char* broadcast_mode_name(BroadcastMode mode);

struct BroadcastOutput {
  BroadcastMode mode = BroadcastMode::kProduct;
  /// chi^(s) on B (x) C, B index major; B and C are copies of the ambient space.
  std::vector<ComplexMatrix> chi;
  /// max_s of |Tr_C chi - rho_s|_F and |Tr_B chi - rho_s|_F.
  double marginal_defect = 0.0;
  /// max_s |chi - sum_l (P_l (x) P_l) chi (P_l (x) P_l)|_F.
  double block_defect = 0.0;
};

/// chi^(s) = sum_l p^(s,l) zeta^(l) with zeta^(l) built from rho_K^(l) per mode.
/// Throws kNotBroadcastable if some block has d_J >= 2.
BroadcastOutput broadcast_states(const DecomposedFamily& decomp, BroadcastMode mode);

struct ImprintReport {
  bool ok = true;
  Index s = -1;
  Index s_other = -1;
  Index block = -1;
  double max_difference = 0.0;
};

/// ok iff all rows of the weight matrix agree within 1e-8.
ImprintReport no_imprinting_holds(const DecomposedFamily& decomp);
ImprintReport no_imprinting_holds(const StateFamily& family, std::uint64_t seed = 0,
                                  const Tolerances& tol = {});

struct ImprintingParts {
  ComplexMatrix sigma_00;  // P0 sigma P0
  ComplexMatrix sigma_0a;  // P0 sigma P_A
  ComplexMatrix sigma_a0;  // P_A sigma P0
  /// Tr_J of block l of sigma, in K coordinates.
  std::vector<ComplexMatrix> sigma_l;
};

ImprintingParts imprinting_parts(const ComplexMatrix& sigma, const DecomposedFamily& decomp);

struct GeneralizedImprintReport {
  bool ok = true;
  Index s = -1;
  Index s_other = -1;
  /// "00", "0A", "A0" or "l=<index>".
  std::string part;
  double max_difference = 0.0;
};

/// ok iff every part of sigma_s' is independent of s' within 1e-8.
GeneralizedImprintReport generalized_no_imprinting(const StateFamily& sigmas,
                                                   const DecomposedFamily& decomp);

struct SequentialCloneReport {
  bool clonable = false;
  bool pure_shortcut = false;
  /// chi_s^(l) on H_K^(l) (x) H_B, indexed [s][l].
  std::vector<std::vector<ComplexMatrix>> residues;
  /// Largest normalized overlap Tr(chi_s^(l) chi_t^(l)) / (|chi_s^(l)| |chi_t^(l)|)
  /// over distinct pairs.
  double min_pairwise_orthogonality_defect = 0.0;
  Index s = -1;
  Index s_other = -1;
  Index block = -1;
  /// The marginal family's structure.
  std::vector<BlockDims> blocks;
};

SequentialCloneReport sequential_clonability(std::span<const ComplexMatrix> chis, Index d_a,
                                             Index d_b, std::uint64_t seed = 0,
                                             const Tolerances& tol = {});

struct BlockEntropy {
  double p = 0.0;
  double s_j = 0.0;
  double s_k = 0.0;
};

struct EntropyReport {
  double i_c = 0.0;
  double i_nc = 0.0;
  double i_r = 0.0;
  double total = 0.0;
  /// S(sum_s p_s rho_s) computed directly.
  double direct = 0.0;
  std::vector<BlockEntropy> per_block;
  /// Blind compression: I_C + I_NC qubits, of which I_C may be classical bits.
  double compression_qubits = 0.0;
  double classical_bits = 0.0;
  /// Entanglement cost of teleporting the ensemble, I_NC ebits.
  double ebits = 0.0;
};

EntropyReport entropy_report(const DecomposedFamily& decomp, const RealVector& weights,
                             const Tolerances& tol = {});
/// Uses the family's own prior (uniform if none).
EntropyReport entropy_report(const DecomposedFamily& decomp, const Tolerances& tol = {});

}  // namespace kidecomp
