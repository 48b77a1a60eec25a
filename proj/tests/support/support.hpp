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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "kidecomp/channels.hpp"
#include "kidecomp/decompose.hpp"
#include "kidecomp/random.hpp"
#include "kidecomp/synth.hpp"

namespace kidecomp::testing {

inline std::vector<std::pair<Index, Index>> block_key(const std::vector<BlockDims>& blocks) {
  std::vector<std::pair<Index, Index>> k;
  for (const auto& b : blocks) k.emplace_back(b.d_j, b.d_k);
  std::sort(k.begin(), k.end());
  return k;
}

/// Smallest max-abs difference between the weight matrices over block
/// permutations that respect (d_J, d_K). Infinity when the block lists
/// differ.
inline double weight_match_error(const std::vector<BlockDims>& ba, const RealMatrix& wa,
                                 const std::vector<BlockDims>& bb, const RealMatrix& wb) {
  if (block_key(ba) != block_key(bb) || wa.rows() != wb.rows()) return INFINITY;
  const std::size_t n = ba.size();
  std::vector<bool> used(n, false);
  double best = INFINITY;
  std::vector<std::size_t> perm(n);
  auto rec = [&](auto&& self, std::size_t i, double worst) -> void {
    if (worst >= best) return;
    if (i == n) {
      best = worst;
      return;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j] || !(ba[i] == bb[j])) continue;
      const double e = (wa.col(static_cast<Index>(i)) - wb.col(static_cast<Index>(j))).cwiseAbs().maxCoeff();
      used[j] = true;
      self(self, i + 1, std::max(worst, e));
      used[j] = false;
    }
  };
  rec(rec, 0, 0.0);
  return best;
}

inline double max_commutator(const StateFamily& f) {
  double m = 0.0;
  for (Index s = 0; s < f.size(); ++s) {
    for (Index t = s + 1; t < f.size(); ++t) {
      const ComplexMatrix& a = f.state(s).matrix();
      const ComplexMatrix& b = f.state(t).matrix();
      m = std::max(m, (a * b - b * a).norm());
    }
  }
  return m;
}

/// Rows of gamma for block l, in its own J-major order.
inline ComplexMatrix block_rows(const Structure& st, Index l) { return st.block_map(l); }

/// Structure whose blocks l1 and l2 (both with d_K = 1) are fused into one
/// block with d_J = d_J1 + d_J2.
inline Structure merge_blocks(const Structure& st, Index l1, Index l2) {
  std::vector<BlockDims> blocks;
  std::vector<ComplexMatrix> rows;
  for (Index l = 0; l < st.block_count(); ++l) {
    if (l == l2) continue;
    if (l == l1) {
      blocks.push_back({st.block(l1).d_j + st.block(l2).d_j, 1});
      ComplexMatrix r(st.block(l1).size() + st.block(l2).size(), st.ambient_dim());
      r << st.block_map(l1), st.block_map(l2);
      rows.push_back(r);
    } else {
      blocks.push_back(st.block(l));
      rows.push_back(st.block_map(l));
    }
  }
  ComplexMatrix gamma(st.support_dim(), st.ambient_dim());
  Index off = 0;
  for (const auto& r : rows) {
    gamma.middleRows(off, r.rows()) = r;
    off += r.rows();
  }
  return Structure(st.ambient_dim(), blocks, gamma);
}

/// Structure where block l is reread as one block with d_J = d_J d_K, d_K = 1.
inline Structure flatten_block(const Structure& st, Index l) {
  std::vector<BlockDims> blocks = st.blocks();
  blocks[static_cast<std::size_t>(l)] = {st.block(l).size(), 1};
  return Structure(st.ambient_dim(), blocks, st.gamma());
}

/// Structure where block l (d_K >= 2) is cut along its K basis into a block
/// holding k = 0 and a block holding the remaining K vectors.
inline Structure split_block(const Structure& st, Index l) {
  const BlockDims b = st.block(l);
  const ComplexMatrix g = st.block_map(l);
  ComplexMatrix first(b.d_j, st.ambient_dim());
  ComplexMatrix rest(b.d_j * (b.d_k - 1), st.ambient_dim());
  for (Index j = 0; j < b.d_j; ++j) {
    first.row(j) = g.row(j * b.d_k);
    for (Index k = 1; k < b.d_k; ++k) rest.row(j * (b.d_k - 1) + k - 1) = g.row(j * b.d_k + k);
  }
  std::vector<BlockDims> blocks;
  ComplexMatrix gamma(st.support_dim(), st.ambient_dim());
  Index off = 0;
  auto put = [&](const ComplexMatrix& r, BlockDims d) {
    gamma.middleRows(off, r.rows()) = r;
    off += r.rows();
    blocks.push_back(d);
  };
  for (Index m = 0; m < st.block_count(); ++m) {
    if (m == l) {
      put(first, {b.d_j, 1});
      put(rest, {b.d_j, b.d_k - 1});
    } else {
      put(st.block_map(m), st.block(m));
    }
  }
  return Structure(st.ambient_dim(), blocks, gamma);
}

/// W diag(e^{i theta}, e^{-i theta}, 1, ...) W^dagger with W Haar random.
inline ComplexMatrix rotation(Index d, double theta, Rng& rng) {
  const ComplexMatrix w = random_unitary(d, rng);
  ComplexVector phases = ComplexVector::Ones(d);
  phases(0) = std::polar(1.0, theta);
  phases(1) = std::polar(1.0, -theta);
  return w * phases.asDiagonal() * w.adjoint();
}

/// Unitary channel rotating the J factor of block l by `v`.
inline KrausChannel j_rotation_channel(const Structure& st, Index l, const ComplexMatrix& v) {
  const Index d = st.ambient_dim();
  ComplexMatrix u = ComplexMatrix::Identity(d, d) - st.block_projector(l);
  u += st.embed(l, kron(v, ComplexMatrix::Identity(st.block(l).d_k, st.block(l).d_k)));
  return KrausChannel({u});
}

/// Block channel with a random K-fixing channel on every block.
inline KrausChannel random_block_channel(const DecomposedFamily& d, Rng& rng) {
  std::vector<KrausChannel> per;
  for (Index l = 0; l < d.block_count(); ++l) {
    per.push_back(random_k_fixing_channel(d.k_states[static_cast<std::size_t>(l)], rng));
  }
  return block_channel(d.structure, per, true, d.k_states);
}

/// Constructed family whose weight rows are all equal, so no block index is
/// s-dependent.
inline StateFamily equal_weight_family(const std::vector<BlockDims>& blocks, Index states,
                                       Rng& rng) {
  Index n = 0;
  for (const auto& b : blocks) n += b.size();
  const ComplexMatrix u = random_unitary(n, rng);
  const RealVector p = random_probabilities(static_cast<Index>(blocks.size()), rng);
  std::vector<ComplexMatrix> ks;
  for (const auto& b : blocks) ks.push_back(random_density(b.d_k, b.d_k, rng));
  std::vector<ComplexMatrix> mats;
  for (Index s = 0; s < states; ++s) {
    ComplexMatrix core = ComplexMatrix::Zero(n, n);
    Index off = 0;
    for (std::size_t l = 0; l < blocks.size(); ++l) {
      const Index m = blocks[l].size();
      core.block(off, off, m, m) =
          p(static_cast<Index>(l)) * kron(random_density(blocks[l].d_j, blocks[l].d_j, rng), ks[l]);
      off += m;
    }
    ComplexMatrix rho = u.adjoint() * core * u;
    mats.push_back(hermitian_part(rho));
  }
  return StateFamily::from_matrices(mats);
}

/// States diagonal in one random basis, with some zero eigenvalues.
inline StateFamily commuting_family(Index d, Index states, Rng& rng) {
  const ComplexMatrix u = random_unitary(d, rng);
  std::vector<ComplexMatrix> mats;
  for (Index s = 0; s < states; ++s) {
    RealVector p(d);
    for (Index i = 0; i < d; ++i) p(i) = rng.uniform() < 0.25 ? 0.0 : rng.uniform(0.05, 1.0);
    if (p.sum() == 0.0) p(rng.uniform_int(0, static_cast<int>(d) - 1)) = 1.0;
    p /= p.sum();
    mats.push_back(hermitian_part(u * p.cast<Complex>().asDiagonal() * u.adjoint()));
  }
  return StateFamily::from_matrices(mats);
}

inline ComplexMatrix ket_bra(const ComplexVector& v) { return v * v.adjoint(); }

}  // namespace kidecomp::testing
