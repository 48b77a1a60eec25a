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

#include "kidecomp/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "kidecomp/staralgebra.hpp"

namespace kidecomp {
namespace {

constexpr double kReassemblyTol = 1e-7;
constexpr double kOrderTol = 1e-9;

ComplexMatrix unitary_factor(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

// Rows (in support coordinates) of one block, with every multiplicity copy
// aligned to the first so the generators act as A (x) 1_K.
ComplexMatrix aligned_block_rows(const IsotypicComponent& comp,
                                 std::span<const ComplexMatrix> gens, const Tolerances& tol) {
  const Index dj = comp.simple_dim;
  const Index dk = comp.multiplicity();
  const Index n = comp.submodules.front().rows();
  const std::vector<ComplexMatrix> ref_action = restrict_to(gens, comp.submodules.front());
  ComplexMatrix cols(n, dj * dk);
  for (Index k = 0; k < dk; ++k) {
    const ComplexMatrix& sub = comp.submodules[static_cast<std::size_t>(k)];
    ComplexMatrix copy = sub;
    if (k > 0) {
      const std::vector<ComplexMatrix> lam = intertwiners(ref_action, restrict_to(gens, sub), tol);
      if (lam.size() != 1) {
        raise(ErrorCode::kMaximalityCheckFailed,
              "isomorphic copies have a " + std::to_string(lam.size()) +
                  "-dimensional intertwiner space");
      }
      copy = sub * unitary_factor(lam.front());
    }
    for (Index j = 0; j < dj; ++j) cols.col(j * dk + k) = copy.col(j);
  }
  return cols.adjoint();
}

ComplexMatrix descending_eigvecs(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(h));
  return es.eigenvectors().rowwise().reverse();
}

Index first_significant(const ComplexVector& v) {
  const double top = v.cwiseAbs().maxCoeff();
  for (Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-8 * top) return i;
  }
  return 0;
}

Complex phase_to_positive(Complex x) {
  const double mag = std::abs(x);
  return mag > 0.0 ? std::conj(x) / mag : Complex(1.0);
}

// Gauge: J basis diagonalizes the J-marginal of rho_all, K basis the
// K-marginal (both descending), then per-factor phases make the first
// significant entry of columns (j,0) and (0,k) of gamma^dagger real positive.
ComplexMatrix gauge_fix(const ComplexMatrix& rows, Index dj, Index dk, const ComplexMatrix& rho_all) {
  const ComplexMatrix blk = rows * rho_all * rows.adjoint();
  const ComplexMatrix vj = descending_eigvecs(partial_trace(blk, dj, dk, Keep::kJ));
  const ComplexMatrix vk = descending_eigvecs(partial_trace(blk, dj, dk, Keep::kK));
  ComplexMatrix cols = rows.adjoint() * kron(vj, vk);

  std::vector<Complex> alpha(static_cast<std::size_t>(dj));
  std::vector<Complex> beta(static_cast<std::size_t>(dk), Complex(1.0));
  for (Index j = 0; j < dj; ++j) {
    const ComplexVector c = cols.col(j * dk);
    alpha[static_cast<std::size_t>(j)] = phase_to_positive(c(first_significant(c)));
  }
  for (Index k = 1; k < dk; ++k) {
    const ComplexVector c = cols.col(k) * alpha[0];
    beta[static_cast<std::size_t>(k)] = phase_to_positive(c(first_significant(c)));
  }
  for (Index j = 0; j < dj; ++j)
    for (Index k = 0; k < dk; ++k)
      cols.col(j * dk + k) *= alpha[static_cast<std::size_t>(j)] * beta[static_cast<std::size_t>(k)];
  return cols.adjoint();
}

struct Candidate {
  BlockDims dims;
  ComplexMatrix rows;  // ambient coordinates
  double p_all = 0.0;
  RealVector column;   // p^(s,l) over s
};

int approx_compare(double a, double b) {
  if (std::abs(a - b) <= kOrderTol) return 0;
  return a < b ? -1 : 1;
}

// Descending p_all, then d_J, then d_K, then weight column.
bool canonical_before(const Candidate& a, const Candidate& b) {
  if (int c = approx_compare(a.p_all, b.p_all); c != 0) return c > 0;
  if (a.dims.d_j != b.dims.d_j) return a.dims.d_j > b.dims.d_j;
  if (a.dims.d_k != b.dims.d_k) return a.dims.d_k > b.dims.d_k;
  for (Index s = 0; s < a.column.size(); ++s) {
    if (int c = approx_compare(a.column(s), b.column(s)); c != 0) return c > 0;
  }
  return false;
}

}  // namespace

RealVector DecomposedFamily::block_weights() const {
  return weights.transpose() * family.weights_or_uniform();
}

ComplexMatrix DecomposedFamily::reassemble(Index s) const {
  const Index d = structure.ambient_dim();
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (Index l = 0; l < block_count(); ++l) {
    const auto& js = j_states[static_cast<std::size_t>(s)][static_cast<std::size_t>(l)];
    if (!js) continue;
    out += weights(s, l) * structure.embed(l, kron(*js, k_states[static_cast<std::size_t>(l)]));
  }
  return out;
}

double DecomposedFamily::reassembly_residual() const {
  double worst = 0.0;
  for (Index s = 0; s < state_count(); ++s) {
    worst = std::max(worst, (family.state(s).matrix() - reassemble(s)).norm());
  }
  return worst;
}

DecomposedFamily components_for(const StateFamily& family, const Structure& structure,
                                const Tolerances& tol) {
  if (family.dim() != structure.ambient_dim()) {
    raise(ErrorCode::kDimensionMismatch, "structure and family ambient dimensions differ");
  }
  const ComplexMatrix rho_all = build_rho_all(family, tol).matrix();
  DecomposedFamily out;
  out.structure = structure;
  out.family = family;
  const Index lcount = structure.block_count();
  out.weights = RealMatrix::Zero(family.size(), lcount);
  out.j_states.assign(static_cast<std::size_t>(family.size()),
                      std::vector<std::optional<ComplexMatrix>>(static_cast<std::size_t>(lcount)));
  for (Index l = 0; l < lcount; ++l) {
    const BlockDims dims = structure.block(l);
    const ComplexMatrix rows = structure.block_map(l);
    const ComplexMatrix all_blk = rows * rho_all * rows.adjoint();
    ComplexMatrix k_state = partial_trace(all_blk, dims.d_j, dims.d_k, Keep::kK);
    const double p_all = k_state.trace().real();
    if (p_all > tol.zero) k_state /= p_all;
    k_state = hermitian_part(k_state);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(k_state, Eigen::EigenvaluesOnly);
    out.k_spectra.push_back(es.eigenvalues().reverse());
    out.k_states.push_back(std::move(k_state));

    for (Index s = 0; s < family.size(); ++s) {
      const ComplexMatrix blk = rows * family.state(s).matrix() * rows.adjoint();
      const double p = blk.trace().real();
      out.weights(s, l) = std::max(p, 0.0);
      if (p > tol.zero) {
        out.j_states[static_cast<std::size_t>(s)][static_cast<std::size_t>(l)] =
            hermitian_part(partial_trace(blk, dims.d_j, dims.d_k, Keep::kJ) / p);
      }
    }
  }
  out.refinement_trace = {refinement_index(structure)};
  return out;
}

DecomposedFamily decompose(const StateFamily& family, std::uint64_t seed, const Tolerances& tol) {
  tol.validate();
  const Index d = family.dim();
  const DensityMatrix rho_all_dm = build_rho_all(family, tol);
  const ComplexMatrix& rho_all = rho_all_dm.matrix();
  const ComplexMatrix support = support_basis(rho_all, tol);
  const Index n = support.cols();

  // Restrict to H_A = Supp(rho_all).
  std::vector<ComplexMatrix> local;
  for (const auto& st : family.states()) {
    local.push_back(hermitian_part(support.adjoint() * st.matrix() * support));
  }
  const ComplexMatrix local_all = hermitian_part(support.adjoint() * rho_all * support);

  // Simple submodules of the algebra generated by the states, then the
  // normalized generators that identify copies differing only in q_k.
  const IsotypicDecomposition plain = isotypic_decompose(local, seed, tol);
  std::vector<ComplexMatrix> normalized(local.size(), ComplexMatrix::Zero(n, n));
  for (const auto& comp : plain.components) {
    const ComplexMatrix& first = comp.submodules.front();
    const double norm = (first.adjoint() * local_all * first).trace().real();
    ComplexMatrix proj = ComplexMatrix::Zero(n, n);
    for (const auto& sub : comp.submodules) proj += sub * sub.adjoint();
    for (std::size_t s = 0; s < local.size(); ++s) {
      normalized[s] += proj * local[s] * proj / norm;
    }
  }
  for (auto& g : normalized) g = hermitian_part(g);
  const IsotypicDecomposition classes =
      isotypic_decompose(normalized, seed ^ 0x5DEECE66DULL, tol);

  std::vector<Candidate> cands;
  for (const auto& comp : classes.components) {
    Candidate c;
    c.dims = {comp.simple_dim, comp.multiplicity()};
    const ComplexMatrix rows = aligned_block_rows(comp, normalized, tol) * support.adjoint();
    c.rows = gauge_fix(rows, c.dims.d_j, c.dims.d_k, rho_all);
    c.p_all = (c.rows * rho_all * c.rows.adjoint()).trace().real();
    c.column.resize(family.size());
    for (Index s = 0; s < family.size(); ++s) {
      c.column(s) = (c.rows * family.state(s).matrix() * c.rows.adjoint()).trace().real();
    }
    cands.push_back(std::move(c));
  }
  std::stable_sort(cands.begin(), cands.end(), canonical_before);

  std::vector<BlockDims> dims;
  ComplexMatrix gamma(n, d);
  Index row = 0;
  for (const auto& c : cands) {
    dims.push_back(c.dims);
    gamma.middleRows(row, c.dims.size()) = c.rows;
    row += c.dims.size();
  }
  DecomposedFamily out = components_for(family, Structure(d, std::move(dims), gamma), tol);
  out.seed_used = plain.seed_used;

  // Refinement indices of the trivial, classical-only and final structures.
  out.refinement_trace.clear();
  out.refinement_trace.push_back(1);
  const auto lcount = static_cast<long>(out.block_count());
  bool has_quantum = false;
  for (const auto& b : out.structure.blocks()) has_quantum |= b.d_j > 1;
  if (lcount > 1) out.refinement_trace.push_back(lcount * (lcount + 1) / 2 - lcount + 1);
  if (has_quantum) out.refinement_trace.push_back(refinement_index(out.structure));

  const double residual = out.reassembly_residual();
  if (residual > kReassemblyTol) {
    raise(ErrorCode::kMaximalityCheckFailed,
          "reassembly residual " + std::to_string(residual) + " exceeds 1e-7");
  }
  const MaximalityReport report = check_maximal(out, tol);
  if (!report.ok) {
    raise(ErrorCode::kMaximalityCheckFailed, "decomposition failed its maximality self-check");
  }
  return out;
}

DecomposedFamily tensor_structure(const DecomposedFamily& a, const DecomposedFamily& b,
                                  const Tolerances& tol) {
  const Structure& sa = a.structure;
  const Structure& sb = b.structure;
  std::vector<BlockDims> dims;
  ComplexMatrix gamma(sa.support_dim() * sb.support_dim(), sa.ambient_dim() * sb.ambient_dim());
  Index off = 0;
  for (Index l1 = 0; l1 < sa.block_count(); ++l1) {
    for (Index l2 = 0; l2 < sb.block_count(); ++l2) {
      const BlockDims b1 = sa.block(l1);
      const BlockDims b2 = sb.block(l2);
      const BlockDims prod{b1.d_j * b2.d_j, b1.d_k * b2.d_k};
      for (Index j1 = 0; j1 < b1.d_j; ++j1)
        for (Index j2 = 0; j2 < b2.d_j; ++j2)
          for (Index k1 = 0; k1 < b1.d_k; ++k1)
            for (Index k2 = 0; k2 < b2.d_k; ++k2) {
              const Index target = off + (j1 * b2.d_j + j2) * prod.d_k + (k1 * b2.d_k + k2);
              gamma.row(target) = kron(sa.gamma().row(sa.offset(l1) + j1 * b1.d_k + k1),
                                       sb.gamma().row(sb.offset(l2) + j2 * b2.d_k + k2));
            }
      dims.push_back(prod);
      off += prod.size();
    }
  }

  DecomposedFamily out;
  out.structure = Structure(sa.ambient_dim() * sb.ambient_dim(), std::move(dims), gamma);
  out.family = tensor_family(a.family, b.family, tol);
  const Index ta = a.state_count();
  const Index tb = b.state_count();
  const Index la = a.block_count();
  const Index lb = b.block_count();
  out.weights = RealMatrix::Zero(ta * tb, la * lb);
  out.j_states.assign(static_cast<std::size_t>(ta * tb),
                      std::vector<std::optional<ComplexMatrix>>(static_cast<std::size_t>(la * lb)));
  for (Index l1 = 0; l1 < la; ++l1) {
    for (Index l2 = 0; l2 < lb; ++l2) {
      const Index l = l1 * lb + l2;
      out.k_states.push_back(kron(a.k_states[static_cast<std::size_t>(l1)],
                                  b.k_states[static_cast<std::size_t>(l2)]));
      const RealVector& q1 = a.k_spectra[static_cast<std::size_t>(l1)];
      const RealVector& q2 = b.k_spectra[static_cast<std::size_t>(l2)];
      std::vector<double> q;
      for (Index i = 0; i < q1.size(); ++i)
        for (Index k = 0; k < q2.size(); ++k) q.push_back(q1(i) * q2(k));
      std::sort(q.begin(), q.end(), std::greater<>());
      out.k_spectra.push_back(Eigen::Map<RealVector>(q.data(), static_cast<Index>(q.size())));
      for (Index s = 0; s < ta; ++s) {
        for (Index t = 0; t < tb; ++t) {
          const Index st = s * tb + t;
          out.weights(st, l) = a.weights(s, l1) * b.weights(t, l2);
          const auto& ja = a.j_states[static_cast<std::size_t>(s)][static_cast<std::size_t>(l1)];
          const auto& jb = b.j_states[static_cast<std::size_t>(t)][static_cast<std::size_t>(l2)];
          if (ja && jb) {
            out.j_states[static_cast<std::size_t>(st)][static_cast<std::size_t>(l)] = kron(*ja, *jb);
          }
        }
      }
    }
  }
  out.refinement_trace = {refinement_index(out.structure)};
  return out;
}

}  // namespace kidecomp
