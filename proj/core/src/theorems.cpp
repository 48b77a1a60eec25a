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

#include "kidecomp/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace kidecomp {
namespace {

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(m));
  const RealVector& ev = es.eigenvalues();
  const double floor = 100.0 * std::numeric_limits<double>::epsilon() *
                       static_cast<double>(ev.size()) * ev.cwiseAbs().maxCoeff();
  const RealVector root = ev.unaryExpr([floor](double x) { return x > floor ? std::sqrt(x) : 0.0; });
  return es.eigenvectors() * root.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

void require_isometry(const ComplexMatrix& v, Index d, const char* name) {
  if (v.rows() != d || v.cols() == 0) {
    raise(ErrorCode::kDimensionMismatch, std::string(name) + " has the wrong shape");
  }
  const Index k = v.cols();
  if ((v.adjoint() * v - ComplexMatrix::Identity(k, k)).norm() > 1e-9) {
    raise(ErrorCode::kValidationError, std::string(name) + " is not an isometry");
  }
}

}  // namespace

SplitResult theorem1_split(const DensityMatrix& rho, const DensityMatrix& rho_prime,
                           const Tolerances& tol) {
  if (rho.dim() != rho_prime.dim()) {
    raise(ErrorCode::kDimensionMismatch, "theorem1_split: operands differ in dimension");
  }
  if (rho.trace() <= tol.zero || rho_prime.trace() <= tol.zero) {
    raise(ErrorCode::kZeroOperator, "theorem1_split: operand has zero trace");
  }
  SplitResult out;
  out.witness = rho.matrix() / rho.trace() - rho_prime.matrix() / rho_prime.trace();
  if (out.witness.norm() <= tol.zero) {
    raise(ErrorCode::kStatesIdentical, "normalized operands coincide; no split exists");
  }
  const ComplexMatrix support = support_basis(rho.matrix() + rho_prime.matrix(), tol);
  const ComplexMatrix local = hermitian_part(support.adjoint() * out.witness * support);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(local);
  const RealVector& ev = es.eigenvalues();
  const Index n = ev.size();
  const double scale = std::max(std::abs(ev(0)), std::abs(ev(n - 1)));
  Index first_pos = n;
  while (first_pos > 0 && ev(first_pos - 1) > tol.rank * scale) --first_pos;
  out.basis_pos = support * es.eigenvectors().rightCols(n - first_pos);
  out.basis_neg = support * es.eigenvectors().leftCols(first_pos);
  return out;
}

PairingResult theorem2_pairing(const DensityMatrix& rho, const ComplexMatrix& basis1,
                               const ComplexMatrix& basis2, const Tolerances& tol) {
  const Index d = rho.dim();
  require_isometry(basis1, d, "basis1");
  require_isometry(basis2, d, "basis2");
  if ((basis2.adjoint() * basis1).norm() > 1e-9) {
    raise(ErrorCode::kValidationError, "H_1 and H_2 are not orthogonal");
  }
  const ComplexMatrix off = basis2.adjoint() * rho.matrix() * basis1;
  const PolarParts polar = polar_offblock(off, tol);

  PairingResult out;
  out.w = basis2 * polar.isometry * basis1.adjoint();
  out.n = basis1 * polar.positive * basis1.adjoint();
  const ComplexMatrix wd = out.w.adjoint();
  const ComplexMatrix span = wd * out.w + out.w * wd;
  out.p_plus = (span + out.w + wd) * 0.5;
  out.p_minus = (span - out.w - wd) * 0.5;

  const ComplexMatrix k1 = support_basis(polar.isometry.adjoint() * polar.isometry, tol);
  const ComplexMatrix k2 = support_basis(polar.isometry * polar.isometry.adjoint(), tol);
  out.k1_basis = basis1 * k1;
  out.k2_basis = basis2 * k2;
  out.k1_perp_basis = basis1 * orthogonal_complement(k1, basis1.cols());
  out.k2_perp_basis = basis2 * orthogonal_complement(k2, basis2.cols());
  return out;
}

ComplexMatrix pairing_witness(const PairingResult& pairing) {
  const ComplexMatrix root = psd_sqrt(pairing.n);
  const ComplexMatrix plus = pairing.p_plus * root * pairing.p_plus;
  const ComplexMatrix minus = pairing.p_minus * root * pairing.p_minus;
  return 4.0 * (plus * plus) - 4.0 * (minus * minus);
}

}  // namespace kidecomp
