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
#include <span>
#include <vector>

#include "kidecomp/numkernel.hpp"

namespace kidecomp {

/// Hilbert-Schmidt orthonormal basis of a matrix subspace of M_dim(C).
struct AlgebraBasis {
  Index dim = 0;
  std::vector<ComplexMatrix> basis;

  Index size() const noexcept { return static_cast<Index>(basis.size()); }
  /// Distance from `m` to the span, in Frobenius norm.
  double distance_to_span(const ComplexMatrix& m) const;
  /// Orthogonal projection of `m` onto the span.
  ComplexMatrix project(const ComplexMatrix& m) const;
};

/// One isotypic class: mutually isomorphic simple submodules, each given by
/// an isometry (dim x simple_dim) onto it.
struct IsotypicComponent {
  std::vector<ComplexMatrix> submodules;
  Index simple_dim = 0;

  Index multiplicity() const noexcept { return static_cast<Index>(submodules.size()); }
};

struct IsotypicDecomposition {
  Index dim = 0;
  std::vector<IsotypicComponent> components;
  /// Largest generator leakage out of any submodule.
  double residual_check = 0.0;
  /// Seed of the sample that produced the split (after any reseeding).
  std::uint64_t seed_used = 0;
};

/// Smallest *-closed subalgebra containing `generators` (and the identity when
/// requested). Closure: breadth-first products with the generators and their
/// adjoints, then full pairwise passes until the span stops growing.
AlgebraBasis generate_algebra(std::span<const ComplexMatrix> generators, bool include_identity,
                              const Tolerances& tol = {});

/// {X : X B = B X for every basis element B}.
AlgebraBasis commutant(const AlgebraBasis& algebra, const Tolerances& tol = {});

/// Commutant of the *-algebra generated by `generators`, computed directly as
/// the joint nullspace of X -> G X - X G and X -> G^dagger X - X G^dagger.
AlgebraBasis commutant_of(std::span<const ComplexMatrix> generators, const Tolerances& tol = {});

/// Decomposes C^d into simple submodules of the algebra generated by the
/// Hermitian `generators` and groups them into isotypic classes.
///
/// A seeded random Hermitian element of the commutant is diagonalized; its
/// eigenvalue clusters are invariant subspaces, each refined recursively
/// until the restricted commutant is trivial. Throws kSupportDeficient if the
/// generators have a common kernel and kDegenerateSample if eight
/// consecutive seeds fail to give a clean split.
IsotypicDecomposition isotypic_decompose(std::span<const ComplexMatrix> generators,
                                         std::uint64_t seed, const Tolerances& tol = {});

/// Basis of {L : L A_k = B_k L for all k}, where A_k and B_k are the actions
/// of the k-th generator on two modules. Each element has unit Frobenius
/// norm and its largest-modulus entry real positive.
std::vector<ComplexMatrix> intertwiners(std::span<const ComplexMatrix> action_a,
                                        std::span<const ComplexMatrix> action_b,
                                        const Tolerances& tol = {});

/// Intertwiners between the invariant subspaces spanned by the isometries
/// `basis_a` and `basis_b`. Throws kNotInvariant if a generator leaks out of
/// either subspace by more than 1e-8.
std::vector<ComplexMatrix> intertwiner_space(std::span<const ComplexMatrix> generators,
                                             const ComplexMatrix& basis_a,
                                             const ComplexMatrix& basis_b,
                                             const Tolerances& tol = {});

/// Restriction V^dagger G V of each generator to the subspace spanned by V.
std::vector<ComplexMatrix> restrict_to(std::span<const ComplexMatrix> generators,
                                       const ComplexMatrix& basis);

/// Largest |(1 - V V^dagger) G V|_F / max(1, |G|_F) over the generators.
double invariance_leakage(std::span<const ComplexMatrix> generators, const ComplexMatrix& basis);

}  // namespace kidecomp
