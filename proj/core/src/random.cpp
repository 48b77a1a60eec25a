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

#include "kidecomp/random.hpp"

#include <algorithm>
#include <cmath>

namespace kidecomp {

ComplexMatrix Rng::ginibre(Index rows, Index cols) {
  ComplexMatrix g(rows, cols);
  for (Index c = 0; c < cols; ++c)
    for (Index r = 0; r < rows; ++r) g(r, c) = Complex(normal(), normal());
  return g;
}

ComplexMatrix random_unitary(Index d, Rng& rng) {
  const ComplexMatrix g = rng.ginibre(d, d);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < d; ++i) {
    const Complex diag = r(i, i);
    const double mag = std::abs(diag);
    if (mag > 0.0) q.col(i) *= diag / mag;
  }
  return q;
}

ComplexMatrix random_density(Index d, Index rank, Rng& rng) {
  const ComplexMatrix g = rng.ginibre(d, rank);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return hermitian_part(rho);
}

ComplexVector random_pure_state(Index d, Rng& rng) {
  ComplexVector v = rng.ginibre(d, 1).col(0);
  return v / v.norm();
}

RealVector random_probabilities(Index n, Rng& rng, double floor) {
  RealVector p(n);
  for (Index i = 0; i < n; ++i) p(i) = rng.uniform(0.0, 1.0);
  p /= p.sum();
  const double f = std::min(floor, 0.5 / static_cast<double>(n));
  p = p * (1.0 - f * static_cast<double>(n)) + RealVector::Constant(n, f);
  return p;
}

ComplexMatrix random_traceless_hermitian(Index d, Rng& rng) {
  ComplexMatrix h = hermitian_part(rng.ginibre(d, d));
  h -= ComplexMatrix::Identity(d, d) * (h.trace() / static_cast<double>(d));
  return h / h.norm();
}

}  // namespace kidecomp
