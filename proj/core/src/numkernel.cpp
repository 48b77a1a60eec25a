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

#include "kidecomp/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace kidecomp {

void Tolerances::validate() const {
  for (auto name : kToleranceNames) {
    const double v = *get(name);
    if (!std::isfinite(v) || v < 0.0) {
      raise(ErrorCode::kInvalidTolerance,
            std::string(name) + " must be finite and nonnegative");
    }
  }
  if (!(rank > zero)) {
    raise(ErrorCode::kInvalidTolerance, "tol_rank must exceed tol_zero");
  }
}

bool Tolerances::set(std::string_view name, double value) {
  if (name == "tol_sym") sym = value;
  else if (name == "tol_psd") psd = value;
  else if (name == "tol_trace") trace = value;
  else if (name == "tol_rank") rank = value;
  else if (name == "tol_zero") zero = value;
  else if (name == "tol_cluster") cluster = value;
  else return false;
  return true;
}

std::optional<double> Tolerances::get(std::string_view name) const {
  if (name == "tol_sym") return sym;
  if (name == "tol_psd") return psd;
  if (name == "tol_trace") return trace;
  if (name == "tol_rank") return rank;
  if (name == "tol_zero") return zero;
  if (name == "tol_cluster") return cluster;
  return std::nullopt;
}

double frobenius(const ComplexMatrix& m) { return m.norm(); }

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  return (m - m.adjoint()).norm();
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  return (m + m.adjoint()) * 0.5;
}

bool all_finite(const ComplexMatrix& m) {
  return m.real().allFinite() && m.imag().allFinite();
}

EigenSystem hermitian_eig(const ComplexMatrix& h, const Tolerances& tol) {
  if (h.rows() != h.cols() || h.rows() == 0) {
    raise(ErrorCode::kDimensionMismatch, "hermitian_eig needs a square nonempty matrix");
  }
  const double defect = hermiticity_defect(h);
  if (defect > tol.sym * std::max(1.0, h.norm())) {
    raise(ErrorCode::kNotHermitian,
          "hermiticity defect " + std::to_string(defect) + " exceeds tol_sym");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(h));
  if (solver.info() != Eigen::Success) {
    raise(ErrorCode::kNoConvergence, "Hermitian eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix support_basis(const ComplexMatrix& psd, const Tolerances& tol) {
  const EigenSystem es = hermitian_eig(psd, tol);
  const Index d = psd.rows();
  const double top = es.values(d - 1);
  if (top <= tol.zero) return ComplexMatrix(d, 0);
  const double cut = tol.rank * top;
  Index first = 0;
  while (first < d && es.values(first) <= cut) ++first;
  // Largest eigenvalues first.
  return es.vectors.rightCols(d - first).rowwise().reverse();
}

ComplexMatrix support_projector(const ComplexMatrix& psd, const Tolerances& tol) {
  const ComplexMatrix basis = support_basis(psd, tol);
  if (basis.cols() == 0) {
    raise(ErrorCode::kZeroOperator, "operator has no eigenvalue above the rank threshold");
  }
  return basis * basis.adjoint();
}

PolarParts polar_offblock(const ComplexMatrix& m, const Tolerances& tol) {
  if (m.norm() <= tol.zero) {
    raise(ErrorCode::kZeroOffBlock, "off-diagonal block vanishes");
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& sv = svd.singularValues();
  const double cut = tol.rank * sv(0);
  Index r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  const ComplexMatrix u = svd.matrixU().leftCols(r);
  const ComplexMatrix v = svd.matrixV().leftCols(r);
  PolarParts out;
  out.isometry = u * v.adjoint();
  out.positive = v * sv.head(r).cast<Complex>().asDiagonal() * v.adjoint();
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, Index d_j, Index d_k, Keep keep) {
  if (d_j < 1 || d_k < 1 || rho.rows() != d_j * d_k || rho.cols() != d_j * d_k) {
    raise(ErrorCode::kDimensionMismatch,
          "partial_trace: operator of size " + std::to_string(rho.rows()) + "x" +
              std::to_string(rho.cols()) + " is not " + std::to_string(d_j) + "*" +
              std::to_string(d_k));
  }
  if (keep == Keep::kJ) {
    ComplexMatrix out = ComplexMatrix::Zero(d_j, d_j);
    for (Index a = 0; a < d_j; ++a)
      for (Index b = 0; b < d_j; ++b)
        for (Index k = 0; k < d_k; ++k) out(a, b) += rho(a * d_k + k, b * d_k + k);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(d_k, d_k);
  for (Index j = 0; j < d_j; ++j)
    out += rho.block(j * d_k, j * d_k, d_k, d_k);
  return out;
}

double entropy_bits(const RealVector& spectrum, double zero_tol) {
  double s = 0.0;
  for (Index i = 0; i < spectrum.size(); ++i) {
    const double p = spectrum(i);
    if (p > zero_tol) s -= p * std::log2(p);
  }
  return s;
}

ComplexMatrix seeded_random_hermitian(Index d, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(d, d);
  for (Index c = 0; c < d; ++c)
    for (Index r = 0; r < d; ++r) g(r, c) = Complex(normal(engine), normal(engine));
  return hermitian_part(g);
}

ComplexMatrix nullspace(const ComplexMatrix& a, double rel_tol, double abs_floor,
                        double scale) {
  const Index n = a.cols();
  if (a.rows() == 0) return ComplexMatrix::Identity(n, n);
  ComplexMatrix square;
  if (a.rows() > n) {
    Eigen::HouseholderQR<ComplexMatrix> qr(a);
    square = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  } else {
    square = a;
  }
  auto split = [&](const RealVector& sv, const ComplexMatrix& v, bool verify,
                   ComplexMatrix& null) {
    if (!sv.allFinite() || !all_finite(v)) return false;
    const double top = scale > 0.0 ? scale : (sv.size() > 0 ? sv(0) : 0.0);
    const double cut = std::max(rel_tol * top, abs_floor);
    Index rank = 0;
    while (rank < sv.size() && sv(rank) > cut) ++rank;
    null = v.rightCols(n - rank);
    if (!verify) return true;
    const double eps = 64.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(n);
    const bool orthonormal =
        (v.adjoint() * v - ComplexMatrix::Identity(n, n)).norm() <= eps;
    const bool annihilated =
        null.cols() == 0 ||
        (square * null).colwise().norm().maxCoeff() <= std::max(cut, eps * sv(0));
    return orthonormal && annihilated;
  };
  ComplexMatrix null;
  {
    Eigen::BDCSVD<ComplexMatrix> svd(square, Eigen::ComputeFullV);
    if (split(svd.singularValues(), svd.matrixV(), true, null)) return null;
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(square, Eigen::ComputeFullV);
  if (!split(svd.singularValues(), svd.matrixV(), false, null)) {
    raise(ErrorCode::kNoConvergence, "singular value decomposition failed");
  }
  return null;
}

ComplexMatrix orthogonal_complement(const ComplexMatrix& basis, Index d) {
  if (basis.cols() == 0) return ComplexMatrix::Identity(d, d);
  const ComplexMatrix proj = ComplexMatrix::Identity(d, d) - basis * basis.adjoint();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(proj));
  const Index keep = d - basis.cols();
  return es.eigenvectors().rightCols(keep);
}

double trace_norm(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace kidecomp
