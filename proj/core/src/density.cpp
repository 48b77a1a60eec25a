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

#include "kidecomp/density.hpp"

#include <cmath>
#include <string>

namespace kidecomp {

DensityMatrix::DensityMatrix(const ComplexMatrix& m, const Tolerances& tol,
                             Normalization norm) {
  if (m.rows() < 1 || m.rows() != m.cols()) {
    raise(ErrorCode::kDimensionMismatch, "density matrix must be square and nonempty");
  }
  if (!all_finite(m)) raise(ErrorCode::kValidationError, "density matrix has non-finite entries");
  defect_ = kidecomp::hermiticity_defect(m);
  if (defect_ > tol.sym) {
    raise(ErrorCode::kNotHermitian,
          "hermiticity defect " + std::to_string(defect_) + " exceeds tol_sym");
  }
  mat_ = hermitian_part(m);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(mat_, Eigen::EigenvaluesOnly);
  min_eig_ = es.eigenvalues()(0);
  if (min_eig_ < -tol.psd) {
    raise(ErrorCode::kNotPositive,
          "minimum eigenvalue " + std::to_string(min_eig_) + " below -tol_psd");
  }
  trace_ = mat_.trace().real();
  normalized_ = std::abs(trace_ - 1.0) <= tol.trace;
  if (norm == Normalization::kUnitTrace && !normalized_) {
    raise(ErrorCode::kNotNormalized, "trace " + std::to_string(trace_) + " differs from 1");
  }
}

ComplexMatrix support_projector(const DensityMatrix& rho, const Tolerances& tol) {
  return support_projector(rho.matrix(), tol);
}

DensityMatrix partial_trace(const DensityMatrix& rho, Index d_j, Index d_k, Keep keep) {
  // The traced-out factor multiplies any negative-eigenvalue slack.
  Tolerances tol;
  tol.psd *= static_cast<double>(keep == Keep::kJ ? d_k : d_j);
  return DensityMatrix(partial_trace(rho.matrix(), d_j, d_k, keep), tol, Normalization::kAny);
}

double von_neumann_entropy(const DensityMatrix& rho, const Tolerances& tol) {
  if (std::abs(rho.trace() - 1.0) > tol.trace) {
    raise(ErrorCode::kNotNormalized, "entropy requires a unit-trace state");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix(), Eigen::EigenvaluesOnly);
  return entropy_bits(es.eigenvalues(), tol.zero);
}

}  // namespace kidecomp
