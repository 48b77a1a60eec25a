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

#include "kidecomp/structure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace kidecomp {

Structure::Structure(Index ambient_dim, std::vector<BlockDims> blocks, ComplexMatrix gamma)
    : ambient_dim_(ambient_dim), blocks_(std::move(blocks)), gamma_(std::move(gamma)) {
  Index total = 0;
  for (const auto& b : blocks_) {
    if (b.d_j < 1 || b.d_k < 1) raise(ErrorCode::kDimensionMismatch, "block dims must be >= 1");
    offsets_.push_back(total);
    total += b.size();
  }
  if (blocks_.empty() || total != gamma_.rows() || gamma_.cols() != ambient_dim_ ||
      total > ambient_dim_) {
    raise(ErrorCode::kDimensionMismatch,
          "structure blocks cover " + std::to_string(total) + " coordinates but gamma is " +
              std::to_string(gamma_.rows()) + "x" + std::to_string(gamma_.cols()));
  }
  const double defect =
      (gamma_ * gamma_.adjoint() - ComplexMatrix::Identity(total, total)).norm();
  if (defect > 1e-9 * std::sqrt(static_cast<double>(total))) {
    raise(ErrorCode::kValidationError,
          "gamma rows are not orthonormal (defect " + std::to_string(defect) + ")");
  }
}

ComplexMatrix Structure::block_map(Index l) const {
  return gamma_.middleRows(offset(l), block(l).size());
}

ComplexMatrix Structure::block_projector(Index l) const {
  const ComplexMatrix g = block_map(l);
  return g.adjoint() * g;
}

ComplexMatrix Structure::support_projector() const { return gamma_.adjoint() * gamma_; }

ComplexMatrix Structure::w_operator(Index l, Index j_out, Index j_in) const {
  const BlockDims& b = block(l);
  ComplexMatrix unit = ComplexMatrix::Zero(b.d_j, b.d_j);
  unit(j_out, j_in) = 1.0;
  return embed(l, kron(unit, ComplexMatrix::Identity(b.d_k, b.d_k)));
}

ComplexMatrix Structure::embed(Index l, const ComplexMatrix& block_op) const {
  const ComplexMatrix g = block_map(l);
  return g.adjoint() * block_op * g;
}

double Structure::axiom_defect() const {
  double worst = 0.0;
  ComplexMatrix completeness = ComplexMatrix::Zero(ambient_dim_, ambient_dim_);
  const Index lmax = block_count();
  for (Index l = 0; l < lmax; ++l) {
    const Index dj = block(l).d_j;
    for (Index a = 0; a < dj; ++a) {
      completeness += w_operator(l, a, a);
      for (Index b = 0; b < dj; ++b) {
        const ComplexMatrix w_ab = w_operator(l, a, b);
        worst = std::max(worst, (w_ab.adjoint() - w_operator(l, b, a)).norm());
        for (Index l2 = 0; l2 < lmax; ++l2) {
          for (Index c = 0; c < block(l2).d_j; ++c) {
            for (Index e = 0; e < block(l2).d_j; ++e) {
              const ComplexMatrix prod = w_ab * w_operator(l2, c, e);
              const ComplexMatrix expect = (l == l2 && b == c)
                                               ? w_operator(l, a, e)
                                               : ComplexMatrix::Zero(ambient_dim_, ambient_dim_);
              worst = std::max(worst, (prod - expect).norm());
            }
          }
        }
      }
    }
  }
  worst = std::max(worst, (completeness - support_projector()).norm());
  return worst;
}

long refinement_index(const Structure& structure) {
  long jsum = 0;
  for (const auto& b : structure.blocks()) jsum += static_cast<long>(b.d_j);
  return jsum * (jsum + 1) / 2 - static_cast<long>(structure.block_count()) + 1;
}

long refinement_bound(Index support_dim) {
  const auto d = static_cast<long>(support_dim);
  return d * (d + 1) / 2;
}

namespace {

// Realigns a (d_J d_K)^2 block so that a product v_J (x) v_K becomes rank one.
ComplexMatrix realign(const ComplexMatrix& m, Index dj, Index dk) {
  ComplexMatrix r(dj * dj, dk * dk);
  for (Index jo = 0; jo < dj; ++jo)
    for (Index ji = 0; ji < dj; ++ji)
      for (Index ko = 0; ko < dk; ++ko)
        for (Index ki = 0; ki < dk; ++ki)
          r(jo * dj + ji, ko * dk + ki) = m(jo * dk + ko, ji * dk + ki);
  return r;
}

}  // namespace

bool structures_equivalent(const Structure& a, const Structure& b, double tol) {
  if (a.ambient_dim() != b.ambient_dim() || a.support_dim() != b.support_dim() ||
      a.block_count() != b.block_count()) {
    return false;
  }
  const Index n = a.support_dim();
  const ComplexMatrix m = b.gamma() * a.gamma().adjoint();
  const double scale = std::sqrt(static_cast<double>(n));
  if ((m * m.adjoint() - ComplexMatrix::Identity(n, n)).norm() > tol * scale) return false;

  const Index lcount = a.block_count();
  std::vector<bool> used(static_cast<std::size_t>(lcount), false);
  ComplexMatrix leftover = m;
  for (Index la = 0; la < lcount; ++la) {
    const BlockDims& da = a.block(la);
    Index best = -1;
    double best_norm = -1.0;
    for (Index lb = 0; lb < lcount; ++lb) {
      if (used[static_cast<std::size_t>(lb)] || !(b.block(lb) == da)) continue;
      const double norm = m.block(b.offset(lb), a.offset(la), da.size(), da.size()).norm();
      if (norm > best_norm) {
        best_norm = norm;
        best = lb;
      }
    }
    if (best < 0) return false;
    used[static_cast<std::size_t>(best)] = true;
    const ComplexMatrix blk = m.block(b.offset(best), a.offset(la), da.size(), da.size());
    leftover.block(b.offset(best), a.offset(la), da.size(), da.size()).setZero();
    // Each matched block must itself be unitary and factor as v_J (x) v_K.
    if ((blk * blk.adjoint() - ComplexMatrix::Identity(da.size(), da.size())).norm() >
        tol * scale) {
      return false;
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(realign(blk, da.d_j, da.d_k));
    const RealVector& sv = svd.singularValues();
    if (sv.size() > 1 && sv(1) > tol * std::max(1.0, sv(0))) return false;
  }
  return leftover.norm() <= tol * scale;
}

}  // namespace kidecomp
