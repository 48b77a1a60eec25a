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

#include <vector>

#include "kidecomp/numkernel.hpp"

namespace kidecomp {

struct BlockDims {
  Index d_j = 1;
  Index d_k = 1;

  Index size() const noexcept { return d_j * d_k; }
  friend bool operator==(const BlockDims&, const BlockDims&) = default;
};

/// Direct-sum-of-tensor-products structure on the support H_A of a family.
///
/// `gamma` has one row per coordinate of the ordered sum over blocks of
/// H_J (x) H_K (J index major inside a block) and one column per ambient
/// coordinate. Its rows are orthonormal; when H_A is the whole ambient space
/// it is unitary.
class Structure {
 public:
  Structure() = default;
  Structure(Index ambient_dim, std::vector<BlockDims> blocks, ComplexMatrix gamma);

  Index ambient_dim() const noexcept { return ambient_dim_; }
  Index support_dim() const noexcept { return gamma_.rows(); }
  Index block_count() const noexcept { return static_cast<Index>(blocks_.size()); }
  const std::vector<BlockDims>& blocks() const noexcept { return blocks_; }
  const BlockDims& block(Index l) const { return blocks_.at(static_cast<std::size_t>(l)); }
  Index offset(Index l) const { return offsets_.at(static_cast<std::size_t>(l)); }
  const ComplexMatrix& gamma() const noexcept { return gamma_; }

  /// Rows of gamma belonging to block l: a (d_J d_K) x ambient co-isometry.
  ComplexMatrix block_map(Index l) const;
  /// P_A^(l), the ambient projector onto block l.
  ComplexMatrix block_projector(Index l) const;
  /// P_A, the ambient projector onto the support.
  ComplexMatrix support_projector() const;
  /// W^(l)_{j'j} = gamma^dagger (|j'><j| (x) 1_K) gamma on the ambient space.
  ComplexMatrix w_operator(Index l, Index j_out, Index j_in) const;
  /// Ambient operator gamma_l^dagger X gamma_l for an operator X on block l.
  ComplexMatrix embed(Index l, const ComplexMatrix& block_op) const;
  /// Largest violation of the partial-isometry axioms: adjoint symmetry,
  /// the product rule and completeness on H_A.
  double axiom_defect() const;

 private:
  Index ambient_dim_ = 0;
  std::vector<BlockDims> blocks_;
  std::vector<Index> offsets_;
  ComplexMatrix gamma_;
};

/// r(D) = (1/2) J (J + 1) - L + 1 with J the sum of d_J over blocks and L
/// the number of blocks.
long refinement_index(const Structure& structure);

/// Upper bound d (d + 1) / 2 for a support of dimension d.
long refinement_bound(Index support_dim);

/// True iff, after permuting blocks with matching (d_J, d_K), gamma_b
/// gamma_a^dagger is block diagonal with each block a product v_J (x) v_K.
bool structures_equivalent(const Structure& a, const Structure& b, double tol = 1e-7);

}  // namespace kidecomp
