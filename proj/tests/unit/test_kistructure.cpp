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

#include <cmath>

#include <gtest/gtest.h>

#include "kidecomp/decompose.hpp"
#include "kidecomp/error.hpp"
#include "kidecomp/synth.hpp"
#include "kidecomp/theorems.hpp"
#include "support.hpp"

namespace kidecomp {
namespace {

using testing::block_key;
using testing::ket_bra;

ComplexVector ket(std::initializer_list<Complex> v) {
  ComplexVector k(static_cast<Index>(v.size()));
  Index i = 0;
  for (auto x : v) k(i++) = x;
  return k;
}

ComplexMatrix diag(std::initializer_list<double> v) {
  RealVector d(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) d(i++) = x;
  return d.cast<Complex>().asDiagonal();
}

StateFamily family_of(std::vector<ComplexMatrix> m) { return StateFamily::from_matrices(m); }

const double kS = 1.0 / std::sqrt(2.0);

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kValidationError;
}

TEST(RefinementIndex, Examples) {
  const ComplexMatrix i1 = ComplexMatrix::Identity(1, 1);
  EXPECT_EQ(refinement_index(Structure(1, {{1, 1}}, i1)), 1);
  const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  EXPECT_EQ(refinement_index(Structure(2, {{1, 1}, {1, 1}}, i2)), 2);
  EXPECT_EQ(refinement_index(Structure(2, {{2, 1}}, i2)), 3);
  EXPECT_EQ(refinement_bound(2), 3);
}

TEST(Structure, AxiomsOfDecomposedStructures) {
  Rng rng(21);
  for (int t = 0; t < 20; ++t) {
    SynthOptions o;
    o.padding = t % 3;
    const SynthFamily sf = random_constructed_family(rng, o);
    const DecomposedFamily d = decompose(sf.family, static_cast<std::uint64_t>(t));
    const Structure& st = d.structure;
    EXPECT_LE(st.axiom_defect(), 1e-8);
    const Index n = st.support_dim();
    EXPECT_LE((st.gamma() * st.gamma().adjoint() - ComplexMatrix::Identity(n, n)).norm(), 1e-9);
    Index total = 0;
    for (const auto& b : st.blocks()) total += b.size();
    EXPECT_EQ(total, n);
    EXPECT_LE((st.support_projector() - support_projector(build_rho_all(sf.family))).norm(), 1e-8);
    const long r = refinement_index(st);
    EXPECT_GE(r, 1);
    EXPECT_LE(r, refinement_bound(n));
    for (std::size_t i = 1; i < d.refinement_trace.size(); ++i) {
      EXPECT_LT(d.refinement_trace[i - 1], d.refinement_trace[i]);
    }
    EXPECT_EQ(d.refinement_trace.back(), r);
  }
}

TEST(BuildRhoAll, Examples) {
  const DensityMatrix a = build_rho_all(family_of({diag({1, 0}), diag({0, 1})}));
  EXPECT_LE((a.matrix() - 0.5 * ComplexMatrix::Identity(2, 2)).norm(), 1e-15);
  Rng rng(22);
  const ComplexMatrix r = random_density(3, 2, rng);
  EXPECT_LE((build_rho_all(family_of({r})).matrix() - r).norm(), 1e-15);
  std::vector<ComplexMatrix> three;
  ComplexMatrix sum = ComplexMatrix::Zero(3, 3);
  for (int i = 0; i < 3; ++i) {
    three.push_back(random_density(3, 1, rng));
    sum += three.back() / 3.0;
  }
  const DensityMatrix all = build_rho_all(family_of(three));
  EXPECT_LE((all.matrix() - sum).norm(), 1e-15);
  EXPECT_NEAR(support_projector(all).trace().real(), 3.0, 1e-10);

  RealVector w(2);
  w << 0.25, 0.75;
  const StateFamily wf(std::vector<DensityMatrix>{DensityMatrix(diag({1, 0})), DensityMatrix(diag({0, 1}))},
                       {}, w);
  EXPECT_LE((build_rho_all(wf).matrix() - diag({0.25, 0.75})).norm(), 1e-15);
}

TEST(BuildRhoAll, EmptyFamily) {
  EXPECT_EQ(code_of([] { StateFamily(std::vector<DensityMatrix>{}); }), ErrorCode::kEmptyFamily);
}

TEST(Theorem1, Examples) {
  SplitResult r = theorem1_split(DensityMatrix(diag({1, 0})), DensityMatrix(diag({0, 1})));
  EXPECT_LE((r.witness - diag({1, -1})).norm(), 1e-15);
  ASSERT_EQ(r.basis_pos.cols(), 1);
  ASSERT_EQ(r.basis_neg.cols(), 1);
  EXPECT_NEAR(std::abs(r.basis_pos(0, 0)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(r.basis_neg(1, 0)), 1.0, 1e-15);

  r = theorem1_split(DensityMatrix(diag({0.75, 0.25})), DensityMatrix(diag({0.25, 0.75})));
  EXPECT_LE((r.witness - diag({0.5, -0.5})).norm(), 1e-15);
  ASSERT_EQ(r.basis_pos.cols(), 1);
  EXPECT_NEAR(std::abs(r.basis_pos(0, 0)), 1.0, 1e-15);

  Rng rng(23);
  const DensityMatrix x(random_density(3, 3, rng));
  EXPECT_EQ(code_of([&] { theorem1_split(x, x); }), ErrorCode::kStatesIdentical);
}

TEST(Theorem1, UnnormalizedInputsAndInvariants) {
  Rng rng(24);
  for (int t = 0; t < 30; ++t) {
    const Index d = rng.uniform_int(2, 5);
    const DensityMatrix a(2.0 * random_density(d, rng.uniform_int(1, static_cast<int>(d)), rng), {},
                          Normalization::kAny);
    const DensityMatrix b(0.5 * random_density(d, rng.uniform_int(1, static_cast<int>(d)), rng), {},
                          Normalization::kAny);
    const SplitResult r = theorem1_split(a, b);
    EXPECT_NEAR(r.witness.trace().real(), 0.0, 1e-9);
    EXPECT_GT(r.basis_pos.cols(), 0);
    EXPECT_GT(r.basis_neg.cols(), 0);
    EXPECT_LE((r.basis_pos.adjoint() * r.basis_neg).norm(), 1e-10);
    ComplexMatrix both(d, r.basis_pos.cols() + r.basis_neg.cols());
    both << r.basis_pos, r.basis_neg;
    const ComplexMatrix p = both * both.adjoint();
    const ComplexMatrix supp = support_projector(ComplexMatrix(a.matrix() + b.matrix()));
    EXPECT_LE((p - supp).norm(), 1e-8);
  }
}

TEST(Theorem2, PlusState) {
  const DensityMatrix plus(ket_bra(ket({kS, kS})));
  const ComplexMatrix e = ComplexMatrix::Identity(2, 2);
  const PairingResult pr = theorem2_pairing(plus, e.col(0), e.col(1));
  ComplexMatrix w = ComplexMatrix::Zero(2, 2);
  w(1, 0) = 1;
  EXPECT_LE((pr.w - w).norm(), 1e-14);
  EXPECT_NEAR(pr.n(0, 0).real(), 0.5, 1e-14);
  EXPECT_LE((pr.p_plus - ket_bra(ket({kS, kS}))).norm(), 1e-14);
  EXPECT_LE((pr.p_minus - ket_bra(ket({kS, -kS}))).norm(), 1e-14);
}

TEST(Theorem2, BellPairSubspaces) {
  const DensityMatrix bell(ket_bra(ket({kS, 0, 0, kS})));
  const ComplexMatrix e = ComplexMatrix::Identity(4, 4);
  const PairingResult pr = theorem2_pairing(bell, e.leftCols(2), e.rightCols(2));
  EXPECT_EQ(pr.k1_basis.cols(), 1);
  EXPECT_EQ(pr.k2_basis.cols(), 1);
  EXPECT_EQ(pr.k1_perp_basis.cols(), 1);
  EXPECT_EQ(pr.k2_perp_basis.cols(), 1);
}

TEST(Theorem2, ZeroOffBlock) {
  const DensityMatrix blockdiag(diag({0.5, 0.5}));
  const ComplexMatrix e = ComplexMatrix::Identity(2, 2);
  EXPECT_EQ(code_of([&] { theorem2_pairing(blockdiag, e.col(0), e.col(1)); }), ErrorCode::kZeroOffBlock);
}

TEST(Theorem2, ProjectorsAndWitnessIdentity) {
  Rng rng(25);
  for (int t = 0; t < 40; ++t) {
    const Index d1 = rng.uniform_int(1, 3), d2 = rng.uniform_int(1, 3), n = d1 + d2;
    const DensityMatrix rho(random_density(n, rng.uniform_int(1, static_cast<int>(n)), rng));
    const ComplexMatrix u = random_unitary(n, rng);
    const ComplexMatrix b1 = u.leftCols(d1), b2 = u.rightCols(d2);
    const PairingResult pr = theorem2_pairing(rho, b1, b2);
    for (const ComplexMatrix* p : {&pr.p_plus, &pr.p_minus}) {
      EXPECT_LE((*p * *p - *p).norm(), 1e-9);
      EXPECT_LE((*p - p->adjoint()).norm(), 1e-9);
    }
    EXPECT_LE((pr.p_plus * pr.p_minus).norm(), 1e-9);
    const ComplexMatrix k = pr.k1_basis * pr.k1_basis.adjoint() + pr.k2_basis * pr.k2_basis.adjoint();
    EXPECT_LE((pr.p_plus + pr.p_minus - k).norm(), 1e-9);
    const ComplexMatrix q1 = b1 * b1.adjoint(), q2 = b2 * b2.adjoint();
    const ComplexMatrix off = q2 * rho.matrix() * q1 + q1 * rho.matrix() * q2;
    EXPECT_LE((pr.w * pr.n + pr.n * pr.w.adjoint() - off).norm(), 1e-8);
    EXPECT_LE((pairing_witness(pr) - off).norm(), 1e-8);
    EXPECT_EQ(pr.k1_basis.cols() + pr.k1_perp_basis.cols(), d1);
    EXPECT_EQ(pr.k2_basis.cols() + pr.k2_perp_basis.cols(), d2);
  }
}

TEST(Decompose, IdenticalMixedStates) {
  Rng rng(26);
  const ComplexMatrix r = random_density(4, 3, rng);
  const DecomposedFamily d = decompose(family_of({r, r}));
  ASSERT_EQ(d.block_count(), 1);
  EXPECT_EQ(d.structure.block(0), (BlockDims{1, 3}));
  EXPECT_NEAR(d.weights(0, 0), 1.0, 1e-12);
  EXPECT_NEAR(d.weights(1, 0), 1.0, 1e-12);
  EXPECT_EQ(d.structure.support_dim(), 3);
}

TEST(Decompose, ZeroAndPlus) {
  const DecomposedFamily d = decompose(family_of({ket_bra(ket({1, 0})), ket_bra(ket({kS, kS}))}));
  ASSERT_EQ(d.block_count(), 1);
  EXPECT_EQ(d.structure.block(0), (BlockDims{2, 1}));
  EXPECT_NEAR(d.weights(0, 0), 1.0, 1e-12);
  EXPECT_NEAR(d.weights(1, 0), 1.0, 1e-12);
}

TEST(Decompose, OverlappingDiagonalStates) {
  const DecomposedFamily d = decompose(family_of({diag({0.5, 0.5, 0}), diag({0, 0.5, 0.5})}));
  ASSERT_EQ(d.block_count(), 3);
  for (const auto& b : d.structure.blocks()) EXPECT_EQ(b, (BlockDims{1, 1}));
  std::vector<std::pair<double, double>> cols;
  for (Index l = 0; l < 3; ++l) cols.emplace_back(d.weights(0, l), d.weights(1, l));
  std::sort(cols.begin(), cols.end());
  EXPECT_NEAR(cols[0].first, 0.0, 1e-12);
  EXPECT_NEAR(cols[0].second, 0.5, 1e-12);
  EXPECT_NEAR(cols[1].first, 0.5, 1e-12);
  EXPECT_NEAR(cols[1].second, 0.0, 1e-12);
  EXPECT_NEAR(cols[2].first, 0.5, 1e-12);
  EXPECT_NEAR(cols[2].second, 0.5, 1e-12);
  EXPECT_FALSE(d.j_states[0][0].has_value() && d.j_states[1][0].has_value() &&
               d.j_states[0][1].has_value() && d.j_states[1][1].has_value() &&
               d.j_states[0][2].has_value() && d.j_states[1][2].has_value());
}

TEST(Decompose, RoundTripOnConstructedFamilies) {
  Rng rng(27);
  for (int t = 0; t < 40; ++t) {
    SynthOptions o;
    o.padding = t % 2;
    o.random_prior = t % 3 == 0;
    const SynthFamily sf = random_constructed_family(rng, o);
    const DecomposedFamily d = decompose(sf.family, static_cast<std::uint64_t>(t));
    EXPECT_EQ(block_key(d.structure.blocks()), block_key(sf.truth.blocks()));
    EXPECT_LE(testing::weight_match_error(sf.truth.blocks(), sf.weights, d.structure.blocks(), d.weights),
              1e-6);
    EXPECT_LE(d.reassembly_residual(), 1e-7);
    EXPECT_TRUE(structures_equivalent(d.structure, sf.truth));
    EXPECT_TRUE(check_maximal(d).ok);
    for (Index s = 0; s < d.state_count(); ++s) EXPECT_NEAR(d.weights.row(s).sum(), 1.0, 1e-9);
    for (const auto& q : d.k_spectra) {
      EXPECT_GT(q.minCoeff(), 0.0);
      for (Index k = 1; k < q.size(); ++k) EXPECT_GE(q(k - 1), q(k));
    }
  }
}

TEST(Decompose, CanonicalBlockOrder) {
  Rng rng(28);
  for (int t = 0; t < 20; ++t) {
    const DecomposedFamily d = decompose(random_constructed_family(rng).family);
    const RealVector p = d.block_weights();
    for (Index l = 1; l < p.size(); ++l) EXPECT_GE(p(l - 1), p(l) - 1e-12);
  }
}

TEST(Decompose, GaugeDiagonalizesKStates) {
  Rng rng(29);
  for (int t = 0; t < 20; ++t) {
    const DecomposedFamily d = decompose(random_constructed_family(rng).family);
    for (std::size_t l = 0; l < d.k_states.size(); ++l) {
      const ComplexMatrix& k = d.k_states[l];
      ComplexMatrix off = k;
      off.diagonal().setZero();
      EXPECT_LE(off.norm(), 1e-9);
      for (Index i = 1; i < k.rows(); ++i) EXPECT_GE(k(i - 1, i - 1).real(), k(i, i).real() - 1e-12);
    }
  }
}

TEST(Decompose, DimensionSixtyFourEnvelope) {
  Rng rng(29);
  std::vector<StateFamily> cases;
  cases.push_back(constructed_family({{8, 8}}, 3, rng).family);
  cases.push_back(constructed_family({{1, 32}}, 3, rng, 32).family);
  cases.push_back(constructed_family({{64, 1}}, 3, rng).family);
  cases.push_back(constructed_family({{3, 2}, {2, 5}, {4, 1}, {1, 6}, {2, 3}, {3, 3}, {2, 2}}, 5, rng, 6).family);
  cases.push_back(StateFamily::from_matrices(std::vector<ComplexMatrix>{ComplexMatrix::Identity(64, 64) / 64.0}));
  const std::vector<std::vector<BlockDims>> expect{
      {{8, 8}}, {{1, 32}}, {{64, 1}}, {}, {{1, 64}}};
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const DecomposedFamily d = decompose(cases[i]);
    EXPECT_EQ(d.structure.ambient_dim(), cases[i].dim());
    EXPECT_LE(d.reassembly_residual(), 1e-9) << i;
    EXPECT_TRUE(check_maximal(d).ok) << i;
    if (!expect[i].empty()) EXPECT_EQ(block_key(d.structure.blocks()), block_key(expect[i])) << i;
  }
}

TEST(Decompose, SameOutputForSameSeed) {
  Rng rng(30);
  const SynthFamily sf = random_constructed_family(rng);
  const DecomposedFamily a = decompose(sf.family, 5), b = decompose(sf.family, 5);
  EXPECT_EQ(a.structure.gamma(), b.structure.gamma());
  EXPECT_EQ(a.weights, b.weights);
}

TEST(CheckMaximal, CoarseAndSplitStructures) {
  Rng rng(31);
  const SynthFamily coarse_src = constructed_family({{2, 1}, {1, 1}}, 3, rng);
  const DecomposedFamily d = decompose(coarse_src.family);
  const Structure merged = testing::merge_blocks(d.structure, 0, 1);
  const MaximalityReport rc = check_maximal(components_for(coarse_src.family, merged));
  EXPECT_FALSE(rc.ok);
  EXPECT_TRUE(rc.has(MaximalityCondition::kIrreducible));

  const SynthFamily split_src = constructed_family({{2, 2}}, 3, rng);
  const DecomposedFamily e = decompose(split_src.family);
  const Structure split = testing::split_block(e.structure, 0);
  const MaximalityReport rs = check_maximal(components_for(split_src.family, split));
  EXPECT_FALSE(rs.ok);
  EXPECT_TRUE(rs.has(MaximalityCondition::kNonIsomorphic));
  EXPECT_FALSE(rs.has(MaximalityCondition::kReassembly));
}

TEST(CheckMaximal, WrongStructureFailsReassembly) {
  Rng rng(32);
  const SynthFamily sf = constructed_family({{2, 1}}, 3, rng);
  // trivial split along the coordinate axes of a coherent block
  const Structure axes(2, {{1, 1}, {1, 1}}, ComplexMatrix::Identity(2, 2));
  const MaximalityReport r = check_maximal(components_for(sf.family, axes));
  EXPECT_FALSE(r.ok);
  EXPECT_TRUE(r.has(MaximalityCondition::kReassembly));
}

TEST(StructuresEquivalent, SelfAndPermutation) {
  Rng rng(33);
  const SynthFamily sf = constructed_family({{2, 2}, {1, 2}, {1, 1}}, 3, rng);
  const Structure& a = sf.truth;
  EXPECT_TRUE(structures_equivalent(a, a));
  std::vector<BlockDims> rev(a.blocks().rbegin(), a.blocks().rend());
  ComplexMatrix g(a.support_dim(), a.ambient_dim());
  Index off = 0;
  for (Index l = a.block_count() - 1; l >= 0; --l) {
    g.middleRows(off, a.block(l).size()) = a.block_map(l);
    off += a.block(l).size();
  }
  EXPECT_TRUE(structures_equivalent(a, Structure(a.ambient_dim(), rev, g)));
  EXPECT_FALSE(structures_equivalent(a, testing::flatten_block(a, 0)));
  // local unitaries on J and K leave the structure unchanged
  const BlockDims b0 = a.block(0);
  ComplexMatrix g2 = a.gamma();
  g2.topRows(b0.size()) = kron(random_unitary(b0.d_j, rng), random_unitary(b0.d_k, rng)) * a.block_map(0);
  EXPECT_TRUE(structures_equivalent(a, Structure(a.ambient_dim(), a.blocks(), g2)));
  // a unitary mixing J and K does not
  ComplexMatrix g3 = a.gamma();
  g3.topRows(b0.size()) = random_unitary(b0.size(), rng) * a.block_map(0);
  EXPECT_FALSE(structures_equivalent(a, Structure(a.ambient_dim(), a.blocks(), g3)));
}

TEST(StructuresEquivalent, IndependentSeeds) {
  Rng rng(34);
  for (int t = 0; t < 5; ++t) {
    const SynthFamily sf = random_constructed_family(rng);
    const Structure a = decompose(sf.family, 1).structure;
    for (std::uint64_t s = 2; s < 22; ++s) EXPECT_TRUE(structures_equivalent(a, decompose(sf.family, s * 104729).structure));
  }
}

TEST(TensorStructure, Examples) {
  Rng rng(35);
  const ComplexMatrix r = random_density(2, 2, rng);
  const DecomposedFamily triv = decompose(family_of({ket_bra(ket({1, 0}))}));
  const DecomposedFamily tt = tensor_structure(triv, triv);
  ASSERT_EQ(tt.block_count(), 1);
  EXPECT_EQ(tt.structure.block(0), (BlockDims{1, 1}));

  const StateFamily a = family_of({ket_bra(ket({1, 0})), ket_bra(ket({0, 1}))});
  const StateFamily b = family_of({ket_bra(ket({1, 0})), ket_bra(ket({kS, kS}))});
  const DecomposedFamily da = decompose(a), db = decompose(b);
  const DecomposedFamily prod = tensor_structure(da, db);
  ASSERT_EQ(prod.block_count(), 2);
  for (const auto& blk : prod.structure.blocks()) EXPECT_EQ(blk, (BlockDims{2, 1}));
  const DecomposedFamily direct = decompose(tensor_family(a, b));
  EXPECT_TRUE(structures_equivalent(direct.structure, prod.structure));
  EXPECT_TRUE(check_maximal(prod).ok);

  const StateFamily single = family_of({r});
  const DecomposedFamily ds = tensor_structure(da, decompose(single));
  for (const auto& blk : ds.structure.blocks()) EXPECT_EQ(blk, (BlockDims{1, 2}));
  EXPECT_TRUE(structures_equivalent(decompose(tensor_family(a, single)).structure, ds.structure));
}

TEST(TensorStructure, RandomPairsMatchDirectDecomposition) {
  Rng rng(36);
  for (int t = 0; t < 10; ++t) {
    SynthOptions o;
    o.max_support = 4;
    o.max_states = 3;
    const SynthFamily a = random_constructed_family(rng, o), b = random_constructed_family(rng, o);
    const DecomposedFamily prod = tensor_structure(decompose(a.family), decompose(b.family));
    EXPECT_LE(prod.reassembly_residual(), 1e-7);
    EXPECT_TRUE(check_maximal(prod).ok);
    EXPECT_TRUE(structures_equivalent(decompose(tensor_family(a.family, b.family)).structure, prod.structure));
  }
}

TEST(ProbeRefinement, MaximalStructuresHaveNoSplits) {
  Rng rng(37);
  for (int t = 0; t < 10; ++t) {
    const DecomposedFamily d = decompose(random_constructed_family(rng).family);
    const ProbeReport p = probe_refinement(d, 64, static_cast<std::uint64_t>(t));
    EXPECT_EQ(p.probes, 64);
    EXPECT_EQ(p.splits_found, 0) << p.first_witness;
  }
}

TEST(ProbeRefinement, TrivialStructureIsRefined) {
  Rng rng(38);
  for (const auto& blocks : {std::vector<BlockDims>{{1, 1}, {1, 1}}, std::vector<BlockDims>{{2, 1}},
                             std::vector<BlockDims>{{1, 2}, {2, 1}}}) {
    const SynthFamily sf = constructed_family(blocks, 3, rng);
    const Index d = sf.family.dim();
    const Structure trivial(d, {{1, d}}, ComplexMatrix::Identity(d, d));
    const DecomposedFamily coarse = components_for(sf.family, trivial);
    EXPECT_GT(probe_refinement(coarse, 64, 1).splits_found, 0);
  }
}

}  // namespace
}  // namespace kidecomp
