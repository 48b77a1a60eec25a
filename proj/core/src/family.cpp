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

#include "kidecomp/family.hpp"

#include <algorithm>
#include <cmath>

namespace kidecomp {

StateFamily::StateFamily(std::vector<DensityMatrix> states, std::vector<std::string> labels,
                         std::optional<RealVector> weights, const Tolerances& tol)
    : states_(std::move(states)), labels_(std::move(labels)), weights_(std::move(weights)) {
  if (states_.empty()) raise(ErrorCode::kEmptyFamily, "state family is empty");
  if (labels_.empty()) {
    for (std::size_t s = 0; s < states_.size(); ++s) labels_.push_back(std::to_string(s));
  }
  if (labels_.size() != states_.size()) {
    raise(ErrorCode::kDimensionMismatch, "one label per state required");
  }
  const Index d = states_.front().dim();
  for (std::size_t s = 0; s < states_.size(); ++s) {
    if (states_[s].dim() != d) {
      raise(ErrorCode::kDimensionMismatch,
            "state '" + labels_[s] + "' has dimension " + std::to_string(states_[s].dim()) +
                ", expected " + std::to_string(d));
    }
    if (!states_[s].normalized()) {
      raise(ErrorCode::kNotNormalized, "state '" + labels_[s] + "' is not unit trace");
    }
  }
  if (weights_) validate_weights(*weights_, size(), tol);
}

StateFamily StateFamily::from_matrices(std::span<const ComplexMatrix> matrices,
                                       std::optional<RealVector> weights,
                                       const Tolerances& tol) {
  std::vector<DensityMatrix> states;
  states.reserve(matrices.size());
  for (const auto& m : matrices) states.emplace_back(m, tol, Normalization::kUnitTrace);
  return StateFamily(std::move(states), {}, std::move(weights), tol);
}

RealVector StateFamily::weights_or_uniform() const {
  if (weights_) return *weights_;
  return RealVector::Constant(size(), 1.0 / static_cast<double>(size()));
}

std::vector<ComplexMatrix> StateFamily::matrices() const {
  std::vector<ComplexMatrix> out;
  out.reserve(states_.size());
  for (const auto& s : states_) out.push_back(s.matrix());
  return out;
}

void validate_weights(const RealVector& weights, Index count, const Tolerances& tol) {
  if (weights.size() != count) {
    raise(ErrorCode::kBadWeights, "expected " + std::to_string(count) + " weights, got " +
                                      std::to_string(weights.size()));
  }
  for (Index i = 0; i < weights.size(); ++i) {
    if (!std::isfinite(weights(i)) || weights(i) <= 0.0) {
      raise(ErrorCode::kBadWeights, "weight " + std::to_string(i) + " is not strictly positive");
    }
  }
  if (std::abs(weights.sum() - 1.0) > tol.trace) {
    raise(ErrorCode::kBadWeights, "weights sum to " + std::to_string(weights.sum()));
  }
}

DensityMatrix build_rho_all(const StateFamily& family, const Tolerances& tol) {
  if (family.size() == 0) raise(ErrorCode::kEmptyFamily, "state family is empty");
  const RealVector p = family.weights_or_uniform();
  ComplexMatrix sum = ComplexMatrix::Zero(family.dim(), family.dim());
  for (Index s = 0; s < family.size(); ++s) sum += p(s) * family.state(s).matrix();
  sum /= sum.trace().real();
  DensityMatrix rho_all(hermitian_part(sum), tol, Normalization::kUnitTrace);

  const ComplexMatrix proj = support_projector(rho_all, tol);
  for (Index s = 0; s < family.size(); ++s) {
    const ComplexMatrix& r = family.state(s).matrix();
    if ((proj * r * proj - r).norm() > 1e-7 * std::max(1.0, r.norm())) {
      raise(ErrorCode::kSupportDeficient,
            "support of rho_all misses part of state '" + family.label(s) + "'");
    }
  }
  return rho_all;
}

StateFamily tensor_family(const StateFamily& a, const StateFamily& b, const Tolerances& tol) {
  std::vector<DensityMatrix> states;
  std::vector<std::string> labels;
  const RealVector pa = a.weights_or_uniform();
  const RealVector pb = b.weights_or_uniform();
  RealVector w(a.size() * b.size());
  // Trace errors of the factors compound in the product.
  Tolerances product_tol = tol;
  product_tol.trace *= 3.0;
  for (Index s = 0; s < a.size(); ++s) {
    for (Index t = 0; t < b.size(); ++t) {
      states.emplace_back(kron(a.state(s).matrix(), b.state(t).matrix()), product_tol,
                          Normalization::kUnitTrace);
      labels.push_back(a.label(s) + "*" + b.label(t));
      w(s * b.size() + t) = pa(s) * pb(t);
    }
  }
  std::optional<RealVector> weights;
  if (a.weights() || b.weights()) weights = w / w.sum();
  return StateFamily(std::move(states), std::move(labels), std::move(weights), tol);
}

}  // namespace kidecomp
