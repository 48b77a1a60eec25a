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

#include "kidecomp/error.hpp"
#include "kidecomp/random.hpp"
#include "kidecomp/staralgebra.hpp"
#include "kidecomp/synth.hpp"
#include "support.hpp"

namespace kidecomp {
namespace {

ComplexMatrix proj(const ComplexVector& v) { return v * v.adjoint(); }

ComplexVector vec2(Complex a, Complex b) {
  ComplexVector v(2);
  v << a, b;
  return v;
}

/// Numerical rank of the vectorized span of all words of length <= depth.
Index word_span_rank(const std::vector<ComplexMatrix>& gens, int depth) {
  std::vector<ComplexMatrix> words = gens, frontier = gens;
  for (int k = 1; k < depth; ++k) {
    std::vector<ComplexMatrix> next;
    for (const auto& w : frontier) {
      for (const auto& g : gens) next.push_back(w * g);
    }
    words.insert(words.end(), next.begin(), next.end());
    frontier = next;
  }
  const Index d = gens.front().rows();
  ComplexMatrix stack(d * d, static_cast<Index>(words.size()));
  for (std::size_t i = 0; i < words.size(); ++i) {
    stack.col(static_cast<Index>(i)) = Eigen::Map<const ComplexVector>(words[i].data(), d * d);
  }
  const RealVector sv = Eigen::JacobiSVD<ComplexMatrix>(stack).singularValues();
  Index r = 0;
  while (r < sv.size() && sv(r) > 1e-10 * sv(0)) ++r;
  return r;
}

TEST(GenerateAlgebra, Examples) {
  const std::vector<ComplexMatrix> id{ComplexMatrix::Identity(2, 2)};
  const AlgebraBasis a = generate_algebra(id, false);
  ASSERT_EQ(a.size(), 1);
  EXPECT_LE((a.basis[0] - ComplexMatrix::Identity(2, 2) / std::sqrt(2.0)).norm(), 1e-12);

  std::vector<ComplexMatrix> diag(2, ComplexMatrix::Zero(2, 2));
  diag[0](0, 0) = 1;
  diag[1](1, 1) = 1;
  EXPECT_EQ(generate_algebra(diag, false).size(), 2);

  const double s = 1.0 / std::sqrt(2.0);
  const std::vector<ComplexMatrix> zp{proj(vec2(1, 0)), proj(vec2(s, s))};
  EXPECT_EQ(generate_algebra(zp, false).size(), 4);
  EXPECT_EQ(word_span_rank(zp, 3), 4);
}

TEST(GenerateAlgebra, ClosedAndOrthonormal) {
  Rng rng(11);
  for (int t = 0; t < 10; ++t) {
    const SynthFamily sf = random_constructed_family(rng, {.max_support = 8});
    const std::vector<ComplexMatrix> gens = sf.family.matrices();
    const AlgebraBasis alg = generate_algebra(gens, true);
    const Index n = alg.size();
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        const Complex g = (alg.basis[static_cast<std::size_t>(i)].adjoint() *
                           alg.basis[static_cast<std::size_t>(j)]).trace();
        EXPECT_NEAR(std::abs(g - Complex(i == j ? 1.0 : 0.0)), 0.0, 1e-9);
        const ComplexMatrix prod = alg.basis[static_cast<std::size_t>(i)] * alg.basis[static_cast<std::size_t>(j)];
        EXPECT_LE(alg.distance_to_span(prod), 1e-8 * std::max(1.0, prod.norm()));
      }
      EXPECT_LE(alg.distance_to_span(alg.basis[static_cast<std::size_t>(i)].adjoint()), 1e-8);
    }
    EXPECT_EQ(word_span_rank(gens, 6) <= n, true);
  }
}

TEST(GenerateAlgebra, DimensionMismatch) {
  const std::vector<ComplexMatrix> g{ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(3, 3)};
  try {
    generate_algebra(g, false);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(Commutant, Examples) {
  const std::vector<ComplexMatrix> id{ComplexMatrix::Identity(2, 2)};
  EXPECT_EQ(commutant(generate_algebra(id, false)).size(), 4);
  const double s = 1.0 / std::sqrt(2.0);
  const std::vector<ComplexMatrix> zp{proj(vec2(1, 0)), proj(vec2(s, s))};
  EXPECT_EQ(commutant(generate_algebra(zp, false)).size(), 1);
  std::vector<ComplexMatrix> g(2, ComplexMatrix::Zero(3, 3));
  g[0](0, 0) = 1;
  g[1](1, 1) = g[1](2, 2) = 1;
  const AlgebraBasis c = commutant(generate_algebra(g, false));
  EXPECT_EQ(c.size(), 5);
  EXPECT_LE(c.distance_to_span(ComplexMatrix::Identity(3, 3) / std::sqrt(3.0)), 1e-10);
}

TEST(Commutant, BlockPatternDimensions) {
  Rng rng(12);
  for (int t = 0; t < 15; ++t) {
    const std::vector<BlockDims> blocks = random_blocks(rng, 12, 3);
    const SynthFamily sf = constructed_family(blocks, 3, rng);
    Index alg_dim = 0, comm_dim = 0;
    for (const auto& b : sf.truth.blocks()) {
      alg_dim += b.d_j * b.d_j;
      comm_dim += b.d_k * b.d_k;
    }
    // the J-action with identity on K: rho_all-normalized generators
    std::vector<ComplexMatrix> gens;
    for (Index s = 0; s < sf.family.size(); ++s) {
      ComplexMatrix core = ComplexMatrix::Zero(sf.truth.support_dim(), sf.truth.support_dim());
      for (Index l = 0; l < sf.truth.block_count(); ++l) {
        const BlockDims b = sf.truth.block(l);
        const Index off = sf.truth.offset(l);
        core.block(off, off, b.size(), b.size()) =
            sf.weights(s, l) * kron(sf.j_states[static_cast<std::size_t>(s)][static_cast<std::size_t>(l)],
                                    ComplexMatrix::Identity(b.d_k, b.d_k));
      }
      gens.push_back(sf.truth.gamma().adjoint() * core * sf.truth.gamma());
    }
    const AlgebraBasis alg = generate_algebra(gens, true);
    EXPECT_EQ(alg.size(), alg_dim);
    EXPECT_EQ(commutant(alg).size(), comm_dim);
  }
}

TEST(Commutant, DoubleCommutantContainsAlgebra) {
  Rng rng(13);
  for (int t = 0; t < 10; ++t) {
    const SynthFamily sf = random_constructed_family(rng, {.max_support = 8});
    const AlgebraBasis alg = generate_algebra(sf.family.matrices(), true);
    const AlgebraBasis cc = commutant(commutant(alg));
    for (const auto& b : alg.basis) EXPECT_LE(cc.distance_to_span(b), 1e-8);
  }
}

TEST(Commutant, HermitianOrthonormalBasis) {
  Rng rng(14);
  for (int t = 0; t < 10; ++t) {
    const SynthFamily sf = random_constructed_family(rng, {.max_support = 10});
    const AlgebraBasis c = commutant(generate_algebra(sf.family.matrices(), true));
    for (std::size_t i = 0; i < c.basis.size(); ++i) {
      EXPECT_LE(hermiticity_defect(c.basis[i]), 1e-12);
      for (std::size_t j = 0; j < c.basis.size(); ++j) {
        EXPECT_NEAR(std::abs((c.basis[i].adjoint() * c.basis[j]).trace()), i == j ? 1.0 : 0.0, 1e-10);
      }
    }
  }
  const std::vector<ComplexMatrix> scalar{ComplexMatrix::Identity(5, 5)};
  const AlgebraBasis all = commutant_of(scalar);
  EXPECT_EQ(all.size(), 25);
  EXPECT_LE(all.distance_to_span(rng.ginibre(5, 5)), 1e-12);
}

TEST(IsotypicDecompose, Examples) {
  const std::vector<ComplexMatrix> id{ComplexMatrix::Identity(2, 2)};
  IsotypicDecomposition iso = isotypic_decompose(id, 0);
  ASSERT_EQ(iso.components.size(), 1u);
  EXPECT_EQ(iso.components[0].simple_dim, 1);
  EXPECT_EQ(iso.components[0].multiplicity(), 2);

  ComplexMatrix d12 = ComplexMatrix::Zero(2, 2);
  d12(0, 0) = 1;
  d12(1, 1) = 2;
  iso = isotypic_decompose(std::vector<ComplexMatrix>{d12}, 0);
  ASSERT_EQ(iso.components.size(), 2u);
  for (const auto& c : iso.components) {
    EXPECT_EQ(c.simple_dim, 1);
    EXPECT_EQ(c.multiplicity(), 1);
  }

  const double s = 1.0 / std::sqrt(2.0);
  iso = isotypic_decompose(std::vector<ComplexMatrix>{proj(vec2(1, 0)), proj(vec2(s, s))}, 0);
  ASSERT_EQ(iso.components.size(), 1u);
  EXPECT_EQ(iso.components[0].simple_dim, 2);
  EXPECT_EQ(iso.components[0].multiplicity(), 1);
}

TEST(IsotypicDecompose, InvariantsOnConstructedFamilies) {
  Rng rng(14);
  for (int t = 0; t < 25; ++t) {
    const SynthFamily sf = random_constructed_family(rng);
    const std::vector<ComplexMatrix> gens = sf.family.matrices();
    const Index d = sf.family.dim();
    const IsotypicDecomposition iso = isotypic_decompose(gens, static_cast<std::uint64_t>(t));
    Index total = 0;
    ComplexMatrix all(d, 0);
    for (const auto& c : iso.components) {
      total += c.simple_dim * c.multiplicity();
      for (const auto& v : c.submodules) {
        EXPECT_EQ(v.cols(), c.simple_dim);
        EXPECT_LE(invariance_leakage(gens, v), 1e-8);
        ComplexMatrix grown(d, all.cols() + v.cols());
        grown << all, v;
        all = grown;
      }
    }
    EXPECT_EQ(total, d);
    EXPECT_LE((all.adjoint() * all - ComplexMatrix::Identity(d, d)).norm(), 1e-8);
    EXPECT_LE(iso.residual_check, 1e-8);
    // same class iff intertwined
    for (std::size_t a = 0; a < iso.components.size(); ++a) {
      for (std::size_t b = 0; b < iso.components.size(); ++b) {
        const auto& va = iso.components[a].submodules.front();
        const auto& vb = iso.components[b].submodules.back();
        if (va.cols() != vb.cols()) continue;
        const std::size_t n = intertwiner_space(gens, va, vb).size();
        EXPECT_EQ(n, a == b ? 1u : 0u);
      }
    }
  }
}

TEST(IsotypicDecompose, PatternIndependentOfSeed) {
  Rng rng(15);
  for (int t = 0; t < 10; ++t) {
    const SynthFamily sf = random_constructed_family(rng);
    const std::vector<ComplexMatrix> gens = sf.family.matrices();
    auto pattern = [&](std::uint64_t seed) {
      std::vector<std::pair<Index, Index>> p;
      for (const auto& c : isotypic_decompose(gens, seed).components) p.emplace_back(c.simple_dim, c.multiplicity());
      std::sort(p.begin(), p.end());
      return p;
    };
    const auto p0 = pattern(1);
    for (std::uint64_t s = 2; s < 6; ++s) EXPECT_EQ(pattern(s * 7919), p0);
  }
}

TEST(IsotypicDecompose, SupportDeficient) {
  ComplexMatrix p = ComplexMatrix::Zero(2, 2);
  p(0, 0) = 1;
  try {
    isotypic_decompose(std::vector<ComplexMatrix>{p}, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSupportDeficient);
  }
}

TEST(IntertwinerSpace, Examples) {
  const double s = 1.0 / std::sqrt(2.0);
  const std::vector<ComplexMatrix> zp{proj(vec2(1, 0)), proj(vec2(s, s))};
  const ComplexMatrix full = ComplexMatrix::Identity(2, 2);
  const std::vector<ComplexMatrix> self = intertwiner_space(zp, full, full);
  ASSERT_EQ(self.size(), 1u);
  EXPECT_LE((self[0] - full / std::sqrt(2.0)).norm(), 1e-10);

  ComplexMatrix d12 = ComplexMatrix::Zero(2, 2);
  d12(0, 0) = 1;
  d12(1, 1) = 2;
  EXPECT_TRUE(intertwiner_space(std::vector<ComplexMatrix>{d12}, full.col(0), full.col(1)).empty());

  Rng rng(16);
  const ComplexMatrix u = random_unitary(4, rng);
  const ComplexMatrix rj = random_density(2, 2, rng);
  const ComplexMatrix rho = u * kron(rj, 0.5 * ComplexMatrix::Identity(2, 2)) * u.adjoint();
  const ComplexMatrix rj2 = random_density(2, 2, rng);
  const ComplexMatrix rho2 = u * kron(rj2, 0.5 * ComplexMatrix::Identity(2, 2)) * u.adjoint();
  // the copies k = 0 and k = 1 of the J block
  ComplexMatrix e = ComplexMatrix::Identity(4, 4);
  ComplexMatrix c0(4, 2), c1(4, 2);
  c0 << e.col(0), e.col(2);
  c1 << e.col(1), e.col(3);
  const std::vector<ComplexMatrix> gens{rho, rho2};
  const std::vector<ComplexMatrix> tw = intertwiner_space(gens, u * c0, u * c1);
  ASSERT_EQ(tw.size(), 1u);
  EXPECT_NEAR(tw[0].norm(), 1.0, 1e-12);
}

TEST(IntertwinerSpace, NotInvariant) {
  const double s = 1.0 / std::sqrt(2.0);
  const std::vector<ComplexMatrix> g{proj(vec2(s, s))};
  const ComplexMatrix e0 = ComplexMatrix::Identity(2, 2).col(0);
  try {
    intertwiner_space(g, e0, e0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotInvariant);
  }
}

}  // namespace
}  // namespace kidecomp
