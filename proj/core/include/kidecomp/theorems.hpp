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

#include "kidecomp/density.hpp"

namespace kidecomp {

/// Eigenspace split of O = rho / Tr rho - rho' / Tr rho'.
struct SplitResult {
  ComplexMatrix witness;    // O
  ComplexMatrix basis_pos;  // H_1: eigenvectors of O with positive eigenvalue
  ComplexMatrix basis_neg;  // H_2: the rest of Supp(rho + rho')
};

/// Coherent pairing between two orthogonal subspaces carried by rho.
struct PairingResult {
  ComplexMatrix w;        // partial isometry K_1 -> K_2 (ambient operator)
  ComplexMatrix n;        // positive operator on K_1 (ambient operator)
  ComplexMatrix p_plus;   // [W^dagger W + W W^dagger + (W + W^dagger)] / 2
  ComplexMatrix p_minus;  // [W^dagger W + W W^dagger - (W + W^dagger)] / 2
  ComplexMatrix k1_basis;
  ComplexMatrix k2_basis;
  ComplexMatrix k1_perp_basis;
  ComplexMatrix k2_perp_basis;
};

/// Throws kStatesIdentical if |O|_F <= tol.zero.
SplitResult theorem1_split(const DensityMatrix& rho, const DensityMatrix& rho_prime,
                           const Tolerances& tol = {});

/// `basis1` and `basis2` are isometries onto orthogonal subspaces H_1, H_2.
/// Throws kZeroOffBlock when P_2 rho P_1 vanishes and kDimensionMismatch for
/// shape errors.
PairingResult theorem2_pairing(const DensityMatrix& rho, const ComplexMatrix& basis1,
                               const ComplexMatrix& basis2, const Tolerances& tol = {});

/// 4 (P+ sqrt(N) P+)^2 - 4 (P- sqrt(N) P-)^2, which equals
/// P_2 rho P_1 + P_1 rho P_2.
ComplexMatrix pairing_witness(const PairingResult& pairing);

}  // namespace kidecomp
