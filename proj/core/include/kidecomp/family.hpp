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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kidecomp/density.hpp"

namespace kidecomp {

/// Finite list of unit-trace density matrices on a shared ambient space,
/// optionally with prior probabilities p_s.
class StateFamily {
 public:
  StateFamily() = default;
  StateFamily(std::vector<DensityMatrix> states, std::vector<std::string> labels = {},
              std::optional<RealVector> weights = std::nullopt, const Tolerances& tol = {});

  /// Validates each matrix as a unit-trace density matrix.
  static StateFamily from_matrices(std::span<const ComplexMatrix> matrices,
                                   std::optional<RealVector> weights = std::nullopt,
                                   const Tolerances& tol = {});

  Index size() const noexcept { return static_cast<Index>(states_.size()); }
  Index dim() const noexcept { return states_.empty() ? 0 : states_.front().dim(); }
  const DensityMatrix& state(Index s) const { return states_.at(static_cast<std::size_t>(s)); }
  const std::vector<DensityMatrix>& states() const noexcept { return states_; }
  const std::string& label(Index s) const { return labels_.at(static_cast<std::size_t>(s)); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::optional<RealVector>& weights() const noexcept { return weights_; }

  /// Prior weights, or the uniform distribution when none were given.
  RealVector weights_or_uniform() const;
  std::vector<ComplexMatrix> matrices() const;

 private:
  std::vector<DensityMatrix> states_;
  std::vector<std::string> labels_;
  std::optional<RealVector> weights_;
};

/// Throws kBadWeights unless `weights` has one strictly positive entry per
/// state and sums to 1 within tol.trace.
void validate_weights(const RealVector& weights, Index count, const Tolerances& tol);

/// rho_all = sum_s p_s rho_s (uniform p_s if the family has no weights).
/// Verifies that its support contains every Supp(rho_s).
DensityMatrix build_rho_all(const StateFamily& family, const Tolerances& tol = {});

/// Family {rho_s (x) sigma_t} indexed s-major, with product weights.
StateFamily tensor_family(const StateFamily& a, const StateFamily& b, const Tolerances& tol = {});

}  // namespace kidecomp
