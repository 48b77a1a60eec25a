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

#include <complex>
#include <cstdint>
#include <optional>
#include <string_view>

#include <Eigen/Dense>

#include "kidecomp/error.hpp"

namespace kidecomp {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Numerical tolerance policy shared by every module.
///
/// `rank` is relative to the largest eigenvalue (or singular value) of the
/// operator being thresholded; all other entries are absolute.
struct Tolerances {
  double sym = 1e-10;
  double psd = 1e-9;
  double trace = 1e-9;
  double rank = 1e-9;
  double zero = 1e-12;
  double cluster = 1e-7;

  /// Throws kInvalidTolerance unless all entries are finite, nonnegative and
  /// rank > zero.
  void validate() const;

  /// Sets an entry by its external name (`tol_sym`, `tol_psd`, ...). Returns
  /// false for unknown names.
  bool set(std::string_view name, double value);
  std::optional<double> get(std::string_view name) const;
};

inline constexpr std::string_view kToleranceNames[] = {
    "tol_sym", "tol_psd", "tol_trace", "tol_rank", "tol_zero", "tol_cluster"};

struct EigenSystem {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // columns are eigenvectors
};

struct PolarParts {
  ComplexMatrix isometry;  // partial isometry W with M = W N
  ComplexMatrix positive;  // N = (M^dagger M)^{1/2}
};

enum class Keep { kJ, kK };

double frobenius(const ComplexMatrix& m);
double hermiticity_defect(const ComplexMatrix& m);
ComplexMatrix hermitian_part(const ComplexMatrix& m);
bool all_finite(const ComplexMatrix& m);

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
/// Throws kNotHermitian when the defect exceeds `tol.sym` (scaled by
/// max(1, |H|_F)) and kNoConvergence if the solver fails.
EigenSystem hermitian_eig(const ComplexMatrix& h, const Tolerances& tol = {});

/// Orthonormal columns spanning the eigenvectors of a PSD operator whose
/// eigenvalues exceed `tol.rank` times the largest one. Empty (zero columns)
/// when the operator vanishes.
ComplexMatrix support_basis(const ComplexMatrix& psd, const Tolerances& tol = {});

/// Orthogonal projector onto the support. Throws kZeroOperator if every
/// eigenvalue is below the rank threshold.
ComplexMatrix support_projector(const ComplexMatrix& psd, const Tolerances& tol = {});

/// Polar decomposition M = W N of a (possibly rectangular) off-diagonal block.
/// Throws kZeroOffBlock if |M|_F <= tol.zero.
PolarParts polar_offblock(const ComplexMatrix& m, const Tolerances& tol = {});

/// Partial trace of an operator on C^{d_J} (x) C^{d_K} in J-major index order.
ComplexMatrix partial_trace(const ComplexMatrix& rho, Index d_j, Index d_k, Keep keep);

/// Shannon entropy in bits of a nonnegative spectrum; entries <= zero_tol
/// contribute nothing.
double entropy_bits(const RealVector& spectrum, double zero_tol);

/// Random Hermitian matrix with i.i.d. Gaussian entries, reproducible per seed.
ComplexMatrix seeded_random_hermitian(Index d, std::uint64_t seed);

/// Orthonormal basis of {x : A x = 0}. Singular values below
/// max(rel_tol * scale, abs_floor) count as zero; a nonpositive `scale`
/// means the largest singular value of A.
ComplexMatrix nullspace(const ComplexMatrix& a, double rel_tol, double abs_floor,
                        double scale = -1.0);

/// Orthonormal basis for the orthogonal complement of span(basis) in C^d.
ComplexMatrix orthogonal_complement(const ComplexMatrix& basis, Index d);

/// Sum of singular values.
double trace_norm(const ComplexMatrix& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace kidecomp
