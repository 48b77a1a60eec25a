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

#include "kidecomp/family.hpp"
#include "kidecomp/random.hpp"
#include "kidecomp/structure.hpp"

namespace kidecomp {

/// Trace-preserving completely positive map in operator-sum form.
class KrausChannel {
 public:
  KrausChannel() = default;
  /// Throws kNotTracePreserving unless sum_i K_i^dagger K_i = 1 within
  /// `tp_tol`, and kDimensionMismatch for inconsistent shapes.
  explicit KrausChannel(std::vector<ComplexMatrix> kraus, double tp_tol = 1e-9);

  static KrausChannel identity(Index d);

  Index input_dim() const noexcept { return input_dim_; }
  Index output_dim() const noexcept { return output_dim_; }
  const std::vector<ComplexMatrix>& kraus() const noexcept { return kraus_; }
  /// |sum_i K_i^dagger K_i - 1|_F.
  double trace_preservation_defect() const;
  /// Choi matrix sum_{ij} |i><j| (x) T(|i><j|).
  ComplexMatrix choi() const;

 private:
  Index input_dim_ = 0;
  Index output_dim_ = 0;
  std::vector<ComplexMatrix> kraus_;
};

/// sum_i K_i X K_i^dagger, for any operator X (linear extension).
ComplexMatrix apply_channel(const KrausChannel& ch, const ComplexMatrix& x);
DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho);

/// State of the environment, E_ij = Tr(K_i rho K_j^dagger), left by the
/// Stinespring dilation whose environment basis indexes the Kraus operators.
ComplexMatrix environment_state(const KrausChannel& ch, const ComplexMatrix& rho);

struct PreservationReport {
  bool ok = false;
  double max_deviation = 0.0;  // max_s |T(rho_s) - rho_s|_tr
  Index worst_state = -1;
};

/// ok iff every member is mapped to itself within 1e-8 in trace norm.
PreservationReport preserves_family(const KrausChannel& ch, const StateFamily& family);

struct BlockFormViolation {
  Index block;
  Index j_out;
  Index j_in;
  double value;
};

struct BlockFormReport {
  bool ok = false;
  double max_violation = 0.0;
  std::vector<BlockFormViolation> violations;
};

/// Tests K W^(l)_{j'j} = W^(l)_{j'j} K P_A for every Kraus operator and
/// every partial isometry of the structure, measured as
/// sqrt(sum_i |[K_i, W] P_A|_F^2), which is invariant under Kraus gauge.
BlockFormReport has_block_form(const KrausChannel& ch, const Structure& structure,
                               double tol = 1e-8);

/// Channel gamma^dagger (sum_l 1_J (x) K^(l)_i) gamma, plus the identity on
/// the orthogonal complement of the support. Per-block channels act on
/// H_K^(l). With `fix_k_state`, each must map k_states[l] to itself within
/// 1e-8 (else kKStateNotFixed).
KrausChannel block_channel(const Structure& structure, std::span<const KrausChannel> per_block,
                           bool fix_k_state, std::span<const ComplexMatrix> k_states);

/// Operator-sum form of [P+ (x) 1, U](P+ (x) Sigma) = 0: (1 - P+) K P+ = 0
/// for all K, with P+ the positive eigenspace projector of O. Throws
/// kNotPreserved unless T(O) = O within 1e-8.
bool lemma1_check(const KrausChannel& ch, const ComplexMatrix& o, double tol = 1e-8);

/// Returns whether (1 - P2) K P2 = 0 for all K. Throws kHypothesisFailed
/// unless Supp(rho) = Ran(P1) + Ran(P2), T(rho) = rho and (1 - P1) K P1 = 0.
bool lemma2_check(const KrausChannel& ch, const ComplexMatrix& rho, const ComplexMatrix& p1,
                  const ComplexMatrix& p2, double tol = 1e-8);

/// Random channel on H_K that fixes rho_K: a mixture of the identity, a
/// unitary diagonal in the eigenbasis of rho_K, and the map that discards
/// its input and re-prepares rho_K.
KrausChannel random_k_fixing_channel(const ComplexMatrix& rho_k, Rng& rng);

/// Random channel with `count` Kraus operators (normalized Ginibre draw).
KrausChannel random_channel(Index d, Index count, Rng& rng);

struct ProjectionResult {
  KrausChannel channel;
  /// |T(rho_s) - rho_s| and trace-preservation residual after the last step.
  double residual = 0.0;
  int iterations = 0;
  /// Dimension of the linear space the Kraus operators were confined to.
  Index kraus_space_dim = 0;
};

/// Least-squares projection of a Kraus tuple onto the trace-preserving maps
/// that fix every member of `family`, by Levenberg-Marquardt iterations on
/// the Kraus entries. Uses only the family's matrices. With
/// `invariance_constraints`, the Kraus operators are first confined to the
/// operators K with (1 - P) K P = 0 for the positive and negative spectral
/// projectors P of random real combinations of the members (a condition
/// every preserving map satisfies).
ProjectionResult project_to_preserving(const StateFamily& family,
                                       std::vector<ComplexMatrix> start, Rng& rng,
                                       bool invariance_constraints = true,
                                       int max_iterations = 200, double target = 1e-14);

}  // namespace kidecomp
