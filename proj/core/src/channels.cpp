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

#include "kidecomp/channels.hpp"

#include <cmath>
#include <complex>

#include <Eigen/Eigenvalues>

#include "kidecomp/error.hpp"

namespace kidecomp {

namespace {

ComplexMatrix kraus_gram(const std::vector<ComplexMatrix>& kraus, Index d) {
  ComplexMatrix g = ComplexMatrix::Zero(d, d);
  for (const auto& k : kraus) g.noalias() += k.adjoint() * k;
  return g;
}

void require_square(const KrausChannel& ch, Index dim, const char* what) {
  if (ch.input_dim() != ch.output_dim() || ch.input_dim() != dim) {
    raise(ErrorCode::kDimensionMismatch,
          std::string(what) + ": channel is " + std::to_string(ch.output_dim()) + "x" +
              std::to_string(ch.input_dim()) + ", expected square of size " +
              std::to_string(dim));
  }
}

/// sqrt(sum_i |(1 - P) K_i P|_F^2).
double leakage(const KrausChannel& ch, const ComplexMatrix& p) {
  const ComplexMatrix q = ComplexMatrix::Identity(p.rows(), p.cols()) - p;
  double sum = 0.0;
  for (const auto& k : ch.kraus()) sum += (q * k * p).squaredNorm();
  return std::sqrt(sum);
}

ComplexMatrix positive_projector(const ComplexMatrix& o) {
  const EigenSystem es = hermitian_eig(o);
  const double top = es.values.cwiseAbs().maxCoeff();
  const double cut = 1e-9 * std::max(top, 1e-300);
  ComplexMatrix p = ComplexMatrix::Zero(o.rows(), o.cols());
  for (Index i = 0; i < es.values.size(); ++i) {
    if (es.values(i) > cut) p.noalias() += es.vectors.col(i) * es.vectors.col(i).adjoint();
  }
  return p;
}

}  // namespace

KrausChannel::KrausChannel(std::vector<ComplexMatrix> kraus, double tp_tol)
    : kraus_(std::move(kraus)) {
  if (kraus_.empty()) raise(ErrorCode::kDimensionMismatch, "channel has no Kraus operators");
  output_dim_ = kraus_.front().rows();
  input_dim_ = kraus_.front().cols();
  for (const auto& k : kraus_) {
    if (k.rows() != output_dim_ || k.cols() != input_dim_) {
      raise(ErrorCode::kDimensionMismatch, "Kraus operators have inconsistent shapes");
    }
    if (!all_finite(k)) raise(ErrorCode::kValidationError, "Kraus operator has non-finite entries");
  }
  const double defect = trace_preservation_defect();
  if (defect > tp_tol) {
    raise(ErrorCode::kNotTracePreserving,
          "|sum K^dagger K - 1|_F = " + std::to_string(defect));
  }
}

KrausChannel KrausChannel::identity(Index d) {
  return KrausChannel({ComplexMatrix::Identity(d, d)});
}

double KrausChannel::trace_preservation_defect() const {
  return (kraus_gram(kraus_, input_dim_) - ComplexMatrix::Identity(input_dim_, input_dim_))
      .norm();
}

ComplexMatrix KrausChannel::choi() const {
  const Index din = input_dim_;
  const Index dout = output_dim_;
  ComplexMatrix c = ComplexMatrix::Zero(din * dout, din * dout);
  for (const auto& k : kraus_) {
    // vectorized (1 (x) K)|Omega>, input index major
    ComplexVector v(din * dout);
    for (Index i = 0; i < din; ++i) v.segment(i * dout, dout) = k.col(i);
    c.noalias() += v * v.adjoint();
  }
  return c;
}

ComplexMatrix apply_channel(const KrausChannel& ch, const ComplexMatrix& x) {
  if (x.rows() != ch.input_dim() || x.cols() != ch.input_dim()) {
    raise(ErrorCode::kDimensionMismatch, "operator is " + std::to_string(x.rows()) + "x" +
                                             std::to_string(x.cols()) + ", channel input is " +
                                             std::to_string(ch.input_dim()));
  }
  ComplexMatrix out = ComplexMatrix::Zero(ch.output_dim(), ch.output_dim());
  for (const auto& k : ch.kraus()) out.noalias() += k * x * k.adjoint();
  return out;
}

DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho) {
  return DensityMatrix(apply_channel(ch, rho.matrix()), Tolerances{}, Normalization::kAny);
}

ComplexMatrix environment_state(const KrausChannel& ch, const ComplexMatrix& rho) {
  if (rho.rows() != ch.input_dim() || rho.cols() != ch.input_dim()) {
    raise(ErrorCode::kDimensionMismatch, "environment_state: dimension mismatch");
  }
  const auto& ks = ch.kraus();
  const Index n = static_cast<Index>(ks.size());
  ComplexMatrix e(n, n);
  for (Index i = 0; i < n; ++i) {
    const ComplexMatrix kr = ks[static_cast<std::size_t>(i)] * rho;
    for (Index j = 0; j < n; ++j) {
      e(i, j) = (kr * ks[static_cast<std::size_t>(j)].adjoint()).trace();
    }
  }
  return e;
}

PreservationReport preserves_family(const KrausChannel& ch, const StateFamily& family) {
  require_square(ch, family.dim(), "preserves_family");
  PreservationReport rep;
  for (Index s = 0; s < family.size(); ++s) {
    const ComplexMatrix& rho = family.state(s).matrix();
    const double dev = trace_norm(apply_channel(ch, rho) - rho);
    if (rep.worst_state < 0 || dev > rep.max_deviation) {
      rep.max_deviation = dev;
      rep.worst_state = s;
    }
  }
  rep.ok = rep.max_deviation <= 1e-8;
  return rep;
}

BlockFormReport has_block_form(const KrausChannel& ch, const Structure& structure, double tol) {
  require_square(ch, structure.ambient_dim(), "has_block_form");
  const ComplexMatrix pa = structure.support_projector();
  BlockFormReport rep;
  for (Index l = 0; l < structure.block_count(); ++l) {
    const Index dj = structure.block(l).d_j;
    for (Index jo = 0; jo < dj; ++jo) {
      for (Index ji = 0; ji < dj; ++ji) {
        const ComplexMatrix w = structure.w_operator(l, jo, ji);
        double sum = 0.0;
        for (const auto& k : ch.kraus()) sum += ((k * w - w * k) * pa).squaredNorm();
        const double v = std::sqrt(sum);
        rep.max_violation = std::max(rep.max_violation, v);
        if (v > tol) rep.violations.push_back({l, jo, ji, v});
      }
    }
  }
  rep.ok = rep.violations.empty();
  return rep;
}

KrausChannel block_channel(const Structure& structure, std::span<const KrausChannel> per_block,
                           bool fix_k_state, std::span<const ComplexMatrix> k_states) {
  const Index nb = structure.block_count();
  if (static_cast<Index>(per_block.size()) != nb) {
    raise(ErrorCode::kDimensionMismatch, "block_channel: need one channel per block");
  }
  if (fix_k_state && static_cast<Index>(k_states.size()) != nb) {
    raise(ErrorCode::kDimensionMismatch, "block_channel: need one K state per block");
  }
  std::size_t count = 0;
  for (Index l = 0; l < nb; ++l) {
    const KrausChannel& c = per_block[static_cast<std::size_t>(l)];
    const Index dk = structure.block(l).d_k;
    if (c.input_dim() != dk || c.output_dim() != dk) {
      raise(ErrorCode::kDimensionMismatch,
            "block_channel: channel for block " + std::to_string(l) + " must act on dimension " +
                std::to_string(dk));
    }
    if (fix_k_state) {
      const ComplexMatrix& rk = k_states[static_cast<std::size_t>(l)];
      if (rk.rows() != dk || rk.cols() != dk) {
        raise(ErrorCode::kDimensionMismatch, "block_channel: K state has wrong dimension");
      }
      const double dev = trace_norm(apply_channel(c, rk) - rk);
      if (dev > 1e-8) {
        raise(ErrorCode::kKStateNotFixed,
              "block " + std::to_string(l) + " moves rho_K by " + std::to_string(dev));
      }
    }
    count = std::max(count, c.kraus().size());
  }
  const Index n = structure.support_dim();
  const Index d = structure.ambient_dim();
  const ComplexMatrix& g = structure.gamma();
  std::vector<ComplexMatrix> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    ComplexMatrix inner = ComplexMatrix::Zero(n, n);
    for (Index l = 0; l < nb; ++l) {
      const auto& ks = per_block[static_cast<std::size_t>(l)].kraus();
      if (i >= ks.size()) continue;
      const BlockDims b = structure.block(l);
      inner.block(structure.offset(l), structure.offset(l), b.size(), b.size()) =
          kron(ComplexMatrix::Identity(b.d_j, b.d_j), ks[i]);
    }
    ComplexMatrix k = g.adjoint() * inner * g;
    if (i == 0) k += ComplexMatrix::Identity(d, d) - structure.support_projector();
    out.push_back(std::move(k));
  }
  return KrausChannel(std::move(out));
}

bool lemma1_check(const KrausChannel& ch, const ComplexMatrix& o, double tol) {
  require_square(ch, o.rows(), "lemma1_check");
  const double dev = (apply_channel(ch, o) - o).norm();
  if (dev > 1e-8) {
    raise(ErrorCode::kNotPreserved, "T(O) differs from O by " + std::to_string(dev));
  }
  return leakage(ch, positive_projector(o)) <= tol;
}

bool lemma2_check(const KrausChannel& ch, const ComplexMatrix& rho, const ComplexMatrix& p1,
                  const ComplexMatrix& p2, double tol) {
  const Index d = rho.rows();
  require_square(ch, d, "lemma2_check");
  if (p1.rows() != d || p1.cols() != d || p2.rows() != d || p2.cols() != d) {
    raise(ErrorCode::kDimensionMismatch, "lemma2_check: projector dimension mismatch");
  }
  auto fail = [](const std::string& what) { raise(ErrorCode::kHypothesisFailed, what); };
  if ((p1 * p1 - p1).norm() > 1e-8 || (p2 * p2 - p2).norm() > 1e-8 ||
      hermiticity_defect(p1) > 1e-8 || hermiticity_defect(p2) > 1e-8) {
    fail("P1 and P2 must be orthogonal projectors");
  }
  if ((p1 * p2).norm() > 1e-8) fail("P1 and P2 must have orthogonal ranges");
  if ((p1 + p2 - support_projector(rho)).norm() > 1e-8) {
    fail("Ran(P1) + Ran(P2) must equal Supp(rho)");
  }
  if ((apply_channel(ch, rho) - rho).norm() > 1e-8) fail("channel must fix rho");
  if (leakage(ch, p1) > tol) fail("channel must map Ran(P1) into itself");
  return leakage(ch, p2) <= tol;
}

KrausChannel random_k_fixing_channel(const ComplexMatrix& rho_k, Rng& rng) {
  const Index d = rho_k.rows();
  const EigenSystem es = hermitian_eig(rho_k);
  RealVector mix = random_probabilities(3, rng, 0.0);
  ComplexVector phases(d);
  for (Index k = 0; k < d; ++k) phases(k) = std::polar(1.0, rng.uniform(0.0, 2.0 * M_PI));
  // unitary inside each degenerate eigenspace
  ComplexMatrix inner = phases.asDiagonal();
  for (Index a = 0; a < d;) {
    Index b = a + 1;
    while (b < d && std::abs(es.values(b) - es.values(a)) <= 1e-12) ++b;
    if (b - a > 1) inner.block(a, a, b - a, b - a) = random_unitary(b - a, rng);
    a = b;
  }
  const ComplexMatrix u = es.vectors * inner * es.vectors.adjoint();
  std::vector<ComplexMatrix> ks;
  ks.push_back(std::sqrt(mix(0)) * ComplexMatrix::Identity(d, d));
  ks.push_back(std::sqrt(mix(1)) * u);
  for (Index k = 0; k < d; ++k) {
    const double q = std::max(es.values(k), 0.0);
    if (q <= 0.0) continue;
    for (Index i = 0; i < d; ++i) {
      ComplexMatrix op = ComplexMatrix::Zero(d, d);
      op.col(i) = std::sqrt(mix(2) * q) * es.vectors.col(k);
      ks.push_back(std::move(op));
    }
  }
  // exact trace preservation
  const ComplexMatrix g = kraus_gram(ks, d);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> sol(g);
  const ComplexMatrix inv_sqrt = sol.operatorInverseSqrt();
  for (auto& k : ks) k = k * inv_sqrt;
  return KrausChannel(std::move(ks));
}

KrausChannel random_channel(Index d, Index count, Rng& rng) {
  std::vector<ComplexMatrix> ks;
  for (Index i = 0; i < count; ++i) ks.push_back(rng.ginibre(d, d));
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> sol(kraus_gram(ks, d));
  const ComplexMatrix inv_sqrt = sol.operatorInverseSqrt();
  for (auto& k : ks) k = k * inv_sqrt;
  return KrausChannel(std::move(ks));
}

}  // namespace kidecomp
