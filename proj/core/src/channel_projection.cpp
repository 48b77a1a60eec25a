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

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "kidecomp/channels.hpp"
#include "kidecomp/error.hpp"

namespace kidecomp {

namespace {

ComplexVector vec(const ComplexMatrix& m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

/// Orthonormal basis (Hilbert-Schmidt) of the operators the Kraus
/// operators may use.
std::vector<ComplexMatrix> kraus_space(const StateFamily& family, bool constrained, Rng& rng) {
  const Index d = family.dim();
  std::vector<ComplexMatrix> basis;
  if (!constrained) {
    for (Index c = 0; c < d; ++c)
      for (Index r = 0; r < d; ++r) {
        ComplexMatrix e = ComplexMatrix::Zero(d, d);
        e(r, c) = 1.0;
        basis.push_back(std::move(e));
      }
    return basis;
  }
  std::vector<ComplexMatrix> projectors;
  auto add_spectral = [&](const ComplexMatrix& o) {
    const EigenSystem es = hermitian_eig(hermitian_part(o));
    const double cut = 1e-9 * es.values.cwiseAbs().maxCoeff();
    ComplexMatrix plus = ComplexMatrix::Zero(d, d);
    ComplexMatrix minus = ComplexMatrix::Zero(d, d);
    for (Index i = 0; i < d; ++i) {
      const ComplexMatrix v = es.vectors.col(i) * es.vectors.col(i).adjoint();
      if (es.values(i) > cut) plus += v;
      if (es.values(i) < -cut) minus += v;
    }
    if (plus.norm() > 0.0) projectors.push_back(plus);
    if (minus.norm() > 0.0) projectors.push_back(minus);
  };
  // O - c rho_all is indefinite for c strictly inside the spectrum of
  // R^{-1/2} O R^{-1/2}, R = rho_all on its support
  const ComplexMatrix rho_all = build_rho_all(family).matrix();
  const ComplexMatrix v = support_basis(rho_all);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> rs(hermitian_part(v.adjoint() * rho_all * v));
  const ComplexMatrix w = v * rs.operatorInverseSqrt();
  for (Index r = 0; r < family.size() + 4; ++r) {
    ComplexMatrix o = ComplexMatrix::Zero(d, d);
    if (r < family.size()) {
      o = family.state(r).matrix();
    } else {
      for (const auto& st : family.states()) o += rng.normal() * st.matrix();
    }
    const EigenSystem es = hermitian_eig(hermitian_part(w.adjoint() * o * w));
    const double span = es.values.cwiseAbs().maxCoeff();
    for (Index i = 1; i < es.values.size(); ++i) {
      if (es.values(i) - es.values(i - 1) <= 1e-9 * span) continue;
      for (int k = 0; k < 3; ++k) {
        const double c = es.values(i - 1) + rng.uniform(0.1, 0.9) * (es.values(i) - es.values(i - 1));
        add_spectral(o - c * rho_all);
      }
    }
  }
  // vec((1 - P) X P) = (P^T (x) (1 - P)) vec(X)
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  ComplexMatrix stacked(static_cast<Index>(projectors.size()) * d * d, d * d);
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    stacked.middleRows(static_cast<Index>(i) * d * d, d * d) =
        kron(projectors[i].transpose(), id - projectors[i]);
  }
  const ComplexMatrix null = nullspace(stacked, 1e-9, 1e-12, 1.0);
  for (Index c = 0; c < null.cols(); ++c) {
    basis.push_back(Eigen::Map<const ComplexMatrix>(null.col(c).data(), d, d));
  }
  return basis;
}

struct Problem {
  Index d;
  Index m;
  std::vector<ComplexMatrix> basis;
  std::vector<ComplexMatrix> rhos;
  Index params() const { return 2 * m * static_cast<Index>(basis.size()); }
  Index rows() const { return (static_cast<Index>(rhos.size()) + 1) * 2 * d * d; }
};

std::vector<ComplexMatrix> unpack(const RealVector& x, const Problem& pr) {
  const auto nb = static_cast<Index>(pr.basis.size());
  std::vector<ComplexMatrix> ks;
  for (Index i = 0; i < pr.m; ++i) {
    ComplexMatrix k = ComplexMatrix::Zero(pr.d, pr.d);
    for (Index a = 0; a < nb; ++a) {
      const Index p = 2 * (i * nb + a);
      k += Complex(x(p), x(p + 1)) * pr.basis[static_cast<std::size_t>(a)];
    }
    ks.push_back(std::move(k));
  }
  return ks;
}

RealVector pack(const std::vector<ComplexMatrix>& ks, const Problem& pr) {
  const auto nb = static_cast<Index>(pr.basis.size());
  RealVector x(pr.params());
  for (Index i = 0; i < pr.m; ++i) {
    for (Index a = 0; a < nb; ++a) {
      const Index p = 2 * (i * nb + a);
      const Complex z = pr.basis[static_cast<std::size_t>(a)]
                            .conjugate()
                            .cwiseProduct(ks[static_cast<std::size_t>(i)])
                            .sum();
      x(p) = z.real();
      x(p + 1) = z.imag();
    }
  }
  return x;
}

void put(RealVector& r, Index block, const ComplexMatrix& m) {
  const Index n = m.size();
  for (Index e = 0; e < n; ++e) {
    r(block * 2 * n + 2 * e) = m.data()[e].real();
    r(block * 2 * n + 2 * e + 1) = m.data()[e].imag();
  }
}

RealVector residual(const std::vector<ComplexMatrix>& ks, const Problem& pr) {
  RealVector r(pr.rows());
  const auto ns = static_cast<Index>(pr.rhos.size());
  for (Index s = 0; s < ns; ++s) {
    const ComplexMatrix& rho = pr.rhos[static_cast<std::size_t>(s)];
    ComplexMatrix f = -rho;
    for (const auto& k : ks) f.noalias() += k * rho * k.adjoint();
    put(r, s, f);
  }
  ComplexMatrix g = -ComplexMatrix::Identity(pr.d, pr.d);
  for (const auto& k : ks) g.noalias() += k.adjoint() * k;
  put(r, ns, g);
  return r;
}

RealMatrix jacobian(const std::vector<ComplexMatrix>& ks, const Problem& pr) {
  const auto nb = static_cast<Index>(pr.basis.size());
  const auto ns = static_cast<Index>(pr.rhos.size());
  RealMatrix jac(pr.rows(), pr.params());
  RealVector col(pr.rows());
  const Complex unit[2] = {Complex(1.0, 0.0), Complex(0.0, 1.0)};
  for (Index i = 0; i < pr.m; ++i) {
    const ComplexMatrix& k = ks[static_cast<std::size_t>(i)];
    std::vector<ComplexMatrix> left;
    for (const auto& rho : pr.rhos) left.push_back(rho * k.adjoint());
    for (Index a = 0; a < nb; ++a) {
      for (int part = 0; part < 2; ++part) {
        const ComplexMatrix e = unit[part] * pr.basis[static_cast<std::size_t>(a)];
        for (Index s = 0; s < ns; ++s) {
          const ComplexMatrix half = e * left[static_cast<std::size_t>(s)];
          put(col, s, half + half.adjoint());
        }
        const ComplexMatrix half = k.adjoint() * e;
        put(col, ns, half + half.adjoint());
        jac.col(2 * (i * nb + a) + part) = col;
      }
    }
  }
  return jac;
}

}  // namespace

ProjectionResult project_to_preserving(const StateFamily& family,
                                       std::vector<ComplexMatrix> start, Rng& rng,
                                       bool invariance_constraints, int max_iterations,
                                       double target) {
  if (start.empty()) raise(ErrorCode::kDimensionMismatch, "no starting Kraus operators");
  const Index d = family.dim();
  for (const auto& k : start) {
    if (k.rows() != d || k.cols() != d) {
      raise(ErrorCode::kDimensionMismatch, "starting Kraus operator has wrong shape");
    }
  }
  Problem pr{d, static_cast<Index>(start.size()), kraus_space(family, invariance_constraints, rng),
             family.matrices()};

  RealVector x = pack(start, pr);
  std::vector<ComplexMatrix> ks = unpack(x, pr);
  RealVector r = residual(ks, pr);
  double cost = r.norm();
  double lambda = 1e-3;
  int it = 0;
  for (; it < max_iterations && cost > target; ++it) {
    const RealMatrix jac = jacobian(ks, pr);
    const RealMatrix h = jac.transpose() * jac;
    const RealVector g = jac.transpose() * r;
    bool accepted = false;
    for (int tries = 0; tries < 30 && !accepted; ++tries) {
      RealMatrix damped = h;
      damped.diagonal().array() += lambda;
      const RealVector xn = x - damped.ldlt().solve(g);
      std::vector<ComplexMatrix> kn = unpack(xn, pr);
      const RealVector rn = residual(kn, pr);
      const double cn = rn.norm();
      if (cn < cost) {
        x = xn;
        ks = std::move(kn);
        r = rn;
        cost = cn;
        lambda = std::max(lambda / 10.0, 1e-15);
        accepted = true;
      } else {
        lambda *= 10.0;
      }
    }
    if (!accepted) break;
  }

  ComplexMatrix gram = ComplexMatrix::Zero(d, d);
  for (const auto& k : ks) gram.noalias() += k.adjoint() * k;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> sol(gram);
  const ComplexMatrix inv_sqrt = sol.operatorInverseSqrt();
  for (auto& k : ks) k = k * inv_sqrt;
  ProjectionResult out{KrausChannel(ks), residual(ks, pr).norm(), it,
                       static_cast<Index>(pr.basis.size())};
  return out;
}

}  // namespace kidecomp
