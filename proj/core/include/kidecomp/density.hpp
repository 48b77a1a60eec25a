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

#include "kidecomp/numkernel.hpp"

namespace kidecomp {

enum class Normalization { kAny, kUnitTrace };

/// Validated Hermitian positive semidefinite operator.
///
/// Construction checks the Hermiticity defect against tol.sym, the smallest
/// eigenvalue against -tol.psd and, for kUnitTrace, the trace against
/// 1 +- tol.trace. The stored matrix is the exact Hermitian part of the input.
class DensityMatrix {
 public:
  DensityMatrix() = default;
  explicit DensityMatrix(const ComplexMatrix& m, const Tolerances& tol = {},
                         Normalization norm = Normalization::kUnitTrace);

  const ComplexMatrix& matrix() const noexcept { return mat_; }
  Index dim() const noexcept { return mat_.rows(); }
  double trace() const noexcept { return trace_; }
  double hermiticity_defect() const noexcept { return defect_; }
  double min_eigenvalue() const noexcept { return min_eig_; }
  bool normalized() const noexcept { return normalized_; }

 private:
  ComplexMatrix mat_;
  double trace_ = 0.0;
  double defect_ = 0.0;
  double min_eig_ = 0.0;
  bool normalized_ = false;
};

/// Projector onto Supp(rho).
ComplexMatrix support_projector(const DensityMatrix& rho, const Tolerances& tol = {});

DensityMatrix partial_trace(const DensityMatrix& rho, Index d_j, Index d_k, Keep keep);

/// S(rho) = -Tr rho log2 rho. Throws kNotNormalized unless Tr rho = 1 within
/// tol.trace. Eigenvalues in (-tol.psd, tol.zero] count as zero.
double von_neumann_entropy(const DensityMatrix& rho, const Tolerances& tol = {});

}  // namespace kidecomp
