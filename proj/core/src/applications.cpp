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

#include "kidecomp/applications.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "kidecomp/error.hpp"

namespace kidecomp {

namespace {

double matrix_entropy(const ComplexMatrix& rho, double zero) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(rho), Eigen::EigenvaluesOnly);
  return entropy_bits(es.eigenvalues(), zero);
}

double max_commutator(const StateFamily& family) {
  double worst = 0.0;
  for (Index s = 0; s < family.size(); ++s) {
    for (Index t = s + 1; t < family.size(); ++t) {
      const ComplexMatrix& a = family.state(s).matrix();
      const ComplexMatrix& b = family.state(t).matrix();
      worst = std::max(worst, (a * b - b * a).norm());
    }
  }
  return worst;
}

}  // namespace

BroadcastReport is_broadcastable(const StateFamily& family, std::uint64_t seed,
                                 const Tolerances& tol) {
  BroadcastReport rep;
  rep.max_commutator = max_commutator(family);
  rep.commuting = rep.max_commutator <= 1e-8;
  const DecomposedFamily decomp = decompose(family, seed, tol);
  for (Index l = 0; l < decomp.block_count(); ++l) {
    if (decomp.structure.block(l).d_j >= 2) {
      rep.witness_block = l;
      break;
    }
  }
  rep.ok = rep.witness_block < 0;
  return rep;
}

const char* broadcast_mode_name(BroadcastMode mode) {
  switch (mode) {
    case BroadcastMode::kProduct:
      return "product";
    case BroadcastMode::kClassical:
      return "classical";
    case BroadcastMode::kQuantum:
      return "quantum";
  }
  return "unknown";
}

BroadcastOutput broadcast_states(const DecomposedFamily& decomp, BroadcastMode mode) {
  const Structure& st = decomp.structure;
  for (Index l = 0; l < st.block_count(); ++l) {
    if (st.block(l).d_j >= 2) {
      raise(ErrorCode::kNotBroadcastable,
            "block " + std::to_string(l) + " has d_J = " + std::to_string(st.block(l).d_j));
    }
  }
  const Index d = st.ambient_dim();
  std::vector<ComplexMatrix> zeta;
  std::vector<ComplexMatrix> proj;
  for (Index l = 0; l < st.block_count(); ++l) {
    const ComplexMatrix gl = st.block_map(l);
    const ComplexMatrix& rk = decomp.k_states[static_cast<std::size_t>(l)];
    const EigenSystem es = hermitian_eig(rk);
    ComplexMatrix z = ComplexMatrix::Zero(d * d, d * d);
    switch (mode) {
      case BroadcastMode::kProduct: {
        const ComplexMatrix r = gl.adjoint() * rk * gl;
        z = kron(r, r);
        break;
      }
      case BroadcastMode::kClassical:
        for (Index k = 0; k < es.values.size(); ++k) {
          const double q = std::max(es.values(k), 0.0);
          const ComplexVector v = gl.adjoint() * es.vectors.col(k);
          const ComplexMatrix vv = v * v.adjoint();
          z += q * kron(vv, vv);
        }
        break;
      case BroadcastMode::kQuantum: {
        ComplexVector chi = ComplexVector::Zero(d * d);
        for (Index k = 0; k < es.values.size(); ++k) {
          const double q = std::max(es.values(k), 0.0);
          const ComplexVector v = gl.adjoint() * es.vectors.col(k);
          chi += std::sqrt(q) * kron(v, v);
        }
        z = chi * chi.adjoint();
        break;
      }
    }
    zeta.push_back(std::move(z));
    const ComplexMatrix p = st.block_projector(l);
    proj.push_back(kron(p, p));
  }

  BroadcastOutput out;
  out.mode = mode;
  for (Index s = 0; s < decomp.state_count(); ++s) {
    ComplexMatrix chi = ComplexMatrix::Zero(d * d, d * d);
    for (Index l = 0; l < st.block_count(); ++l) {
      chi += decomp.weights(s, l) * zeta[static_cast<std::size_t>(l)];
    }
    const ComplexMatrix& rho = decomp.family.state(s).matrix();
    out.marginal_defect =
        std::max({out.marginal_defect, (partial_trace(chi, d, d, Keep::kJ) - rho).norm(),
                  (partial_trace(chi, d, d, Keep::kK) - rho).norm()});
    ComplexMatrix diag = ComplexMatrix::Zero(d * d, d * d);
    for (const auto& p : proj) diag += p * chi * p;
    out.block_defect = std::max(out.block_defect, (chi - diag).norm());
    out.chi.push_back(std::move(chi));
  }
  return out;
}

ImprintReport no_imprinting_holds(const DecomposedFamily& decomp) {
  ImprintReport rep;
  const RealMatrix& w = decomp.weights;
  for (Index s = 0; s < w.rows(); ++s) {
    for (Index t = s + 1; t < w.rows(); ++t) {
      for (Index l = 0; l < w.cols(); ++l) {
        const double diff = std::abs(w(s, l) - w(t, l));
        rep.max_difference = std::max(rep.max_difference, diff);
        if (rep.ok && diff > 1e-8) {
          rep.ok = false;
          rep.s = s;
          rep.s_other = t;
          rep.block = l;
        }
      }
    }
  }
  return rep;
}

ImprintReport no_imprinting_holds(const StateFamily& family, std::uint64_t seed,
                                  const Tolerances& tol) {
  return no_imprinting_holds(decompose(family, seed, tol));
}

ImprintingParts imprinting_parts(const ComplexMatrix& sigma, const DecomposedFamily& decomp) {
  const Structure& st = decomp.structure;
  const Index d = st.ambient_dim();
  if (sigma.rows() != d || sigma.cols() != d) {
    raise(ErrorCode::kDimensionMismatch, "sigma is " + std::to_string(sigma.rows()) + "x" +
                                             std::to_string(sigma.cols()) +
                                             ", structure ambient dimension is " +
                                             std::to_string(d));
  }
  const ComplexMatrix pa = st.support_projector();
  const ComplexMatrix p0 = ComplexMatrix::Identity(d, d) - pa;
  ImprintingParts parts;
  parts.sigma_00 = p0 * sigma * p0;
  parts.sigma_0a = p0 * sigma * pa;
  parts.sigma_a0 = pa * sigma * p0;
  for (Index l = 0; l < st.block_count(); ++l) {
    const ComplexMatrix gl = st.block_map(l);
    const BlockDims b = st.block(l);
    parts.sigma_l.push_back(partial_trace(gl * sigma * gl.adjoint(), b.d_j, b.d_k, Keep::kK));
  }
  return parts;
}

GeneralizedImprintReport generalized_no_imprinting(const StateFamily& sigmas,
                                                   const DecomposedFamily& decomp) {
  GeneralizedImprintReport rep;
  const ImprintingParts ref = imprinting_parts(sigmas.state(0).matrix(), decomp);
  auto note = [&rep](Index t, const std::string& part, double diff) {
    rep.max_difference = std::max(rep.max_difference, diff);
    if (rep.ok && diff > 1e-8) {
      rep.ok = false;
      rep.s = 0;
      rep.s_other = t;
      rep.part = part;
    }
  };
  for (Index t = 1; t < sigmas.size(); ++t) {
    const ImprintingParts p = imprinting_parts(sigmas.state(t).matrix(), decomp);
    note(t, "00", (p.sigma_00 - ref.sigma_00).norm());
    note(t, "0A", (p.sigma_0a - ref.sigma_0a).norm());
    note(t, "A0", (p.sigma_a0 - ref.sigma_a0).norm());
    for (std::size_t l = 0; l < p.sigma_l.size(); ++l) {
      note(t, "l=" + std::to_string(l), (p.sigma_l[l] - ref.sigma_l[l]).norm());
    }
  }
  return rep;
}

SequentialCloneReport sequential_clonability(std::span<const ComplexMatrix> chis, Index d_a,
                                             Index d_b, std::uint64_t seed,
                                             const Tolerances& tol) {
  if (chis.empty()) raise(ErrorCode::kEmptyFamily, "no joint states given");
  if (d_a < 1 || d_b < 1) raise(ErrorCode::kDimensionMismatch, "dimensions must be positive");
  const Index n = d_a * d_b;
  std::vector<DensityMatrix> joint;
  for (std::size_t s = 0; s < chis.size(); ++s) {
    if (chis[s].rows() != n || chis[s].cols() != n) {
      raise(ErrorCode::kDimensionMismatch, "joint state " + std::to_string(s) + " is " +
                                               std::to_string(chis[s].rows()) + "x" +
                                               std::to_string(chis[s].cols()) +
                                               ", expected " + std::to_string(n));
    }
    joint.emplace_back(chis[s], tol);
  }
  const Index count = static_cast<Index>(joint.size());
  std::vector<std::vector<bool>> identical(static_cast<std::size_t>(count),
                                           std::vector<bool>(static_cast<std::size_t>(count)));
  for (Index s = 0; s < count; ++s)
    for (Index t = 0; t < count; ++t)
      identical[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)] =
          (joint[static_cast<std::size_t>(s)].matrix() -
           joint[static_cast<std::size_t>(t)].matrix())
              .norm() <= 1e-8;

  SequentialCloneReport rep;

  // pure joint states: overlaps outside {0, 1} rule cloning out
  std::vector<ComplexVector> pure;
  for (const auto& c : joint) {
    const ComplexMatrix basis = support_basis(c.matrix(), tol);
    if (basis.cols() != 1) break;
    pure.push_back(basis.col(0));
  }
  if (static_cast<Index>(pure.size()) == count) {
    rep.pure_shortcut = true;
    for (Index s = 0; s < count && rep.s < 0; ++s) {
      for (Index t = s + 1; t < count; ++t) {
        if (identical[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)]) continue;
        const double o = std::abs(
            pure[static_cast<std::size_t>(s)].dot(pure[static_cast<std::size_t>(t)]));
        rep.min_pairwise_orthogonality_defect =
            std::max(rep.min_pairwise_orthogonality_defect, o);
        if (o > 1e-8) {
          rep.clonable = false;
          rep.s = s;
          rep.s_other = t;
          return rep;
        }
      }
    }
  }

  std::vector<DensityMatrix> marginals;
  for (const auto& c : joint) marginals.push_back(partial_trace(c, d_a, d_b, Keep::kJ));
  const StateFamily family(std::move(marginals), {}, std::nullopt, tol);
  const DecomposedFamily decomp = decompose(family, seed, tol);
  const Structure& st = decomp.structure;
  rep.blocks = st.blocks();
  const ComplexMatrix id_b = ComplexMatrix::Identity(d_b, d_b);
  rep.residues.resize(static_cast<std::size_t>(count));
  for (Index s = 0; s < count; ++s) {
    for (Index l = 0; l < st.block_count(); ++l) {
      const BlockDims b = st.block(l);
      ComplexMatrix g = kron(st.block_map(l), id_b);
      // rows ordered (J, K, B)
      rep.residues[static_cast<std::size_t>(s)].push_back(partial_trace(
          g * joint[static_cast<std::size_t>(s)].matrix() * g.adjoint(), b.d_j, b.d_k * d_b,
          Keep::kK));
    }
  }

  rep.clonable = true;
  rep.min_pairwise_orthogonality_defect = 0.0;
  for (Index s = 0; s < count; ++s) {
    for (Index t = s + 1; t < count; ++t) {
      if (identical[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)]) continue;
      for (Index l = 0; l < st.block_count(); ++l) {
        const ComplexMatrix& a =
            rep.residues[static_cast<std::size_t>(s)][static_cast<std::size_t>(l)];
        const ComplexMatrix& b =
            rep.residues[static_cast<std::size_t>(t)][static_cast<std::size_t>(l)];
        const double na = a.norm();
        const double nb = b.norm();
        if (na <= tol.zero || nb <= tol.zero) continue;
        const double overlap = std::abs((a.adjoint() * b).trace()) / (na * nb);
        rep.min_pairwise_orthogonality_defect =
            std::max(rep.min_pairwise_orthogonality_defect, overlap);
        if (rep.clonable && overlap > 1e-8) {
          rep.clonable = false;
          rep.s = s;
          rep.s_other = t;
          rep.block = l;
        }
      }
    }
  }
  return rep;
}

EntropyReport entropy_report(const DecomposedFamily& decomp, const RealVector& weights,
                             const Tolerances& tol) {
  validate_weights(weights, decomp.state_count(), tol);
  const Structure& st = decomp.structure;
  EntropyReport rep;
  for (Index l = 0; l < st.block_count(); ++l) {
    const BlockDims b = st.block(l);
    BlockEntropy be;
    ComplexMatrix rj = ComplexMatrix::Zero(b.d_j, b.d_j);
    for (Index s = 0; s < decomp.state_count(); ++s) {
      const auto& js = decomp.j_states[static_cast<std::size_t>(s)][static_cast<std::size_t>(l)];
      const double c = weights(s) * decomp.weights(s, l);
      be.p += c;
      if (js) rj += c * *js;
    }
    if (be.p > 0.0) {
      be.s_j = matrix_entropy(rj / be.p, tol.zero);
      be.s_k = entropy_bits(decomp.k_spectra[static_cast<std::size_t>(l)], tol.zero);
      rep.i_c -= be.p * std::log2(be.p);
      rep.i_nc += be.p * be.s_j;
      rep.i_r += be.p * be.s_k;
    }
    rep.per_block.push_back(be);
  }
  rep.total = rep.i_c + rep.i_nc + rep.i_r;
  ComplexMatrix all = ComplexMatrix::Zero(st.ambient_dim(), st.ambient_dim());
  for (Index s = 0; s < decomp.state_count(); ++s) {
    all += weights(s) * decomp.family.state(s).matrix();
  }
  rep.direct = matrix_entropy(all, tol.zero);
  rep.compression_qubits = rep.i_c + rep.i_nc;
  rep.classical_bits = rep.i_c;
  rep.ebits = rep.i_nc;
  return rep;
}

EntropyReport entropy_report(const DecomposedFamily& decomp, const Tolerances& tol) {
  return entropy_report(decomp, decomp.family.weights_or_uniform(), tol);
}

}  // namespace kidecomp
