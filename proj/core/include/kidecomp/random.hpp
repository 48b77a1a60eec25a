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

#include <cstdint>
#include <random>
#include <vector>

#include "kidecomp/numkernel.hpp"

namespace kidecomp {

/// Seeded random source for test-instance generation. All draws are
/// reproducible for a fixed seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  int uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }
  std::uint64_t next_seed() { return engine_(); }

  ComplexMatrix ginibre(Index rows, Index cols);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
ComplexMatrix random_unitary(Index d, Rng& rng);

/// Random unit-trace density matrix of the requested rank (G G^dagger / Tr).
ComplexMatrix random_density(Index d, Index rank, Rng& rng);

/// Random unit vector.
ComplexVector random_pure_state(Index d, Rng& rng);

/// Random probability vector with every entry at least `floor`.
RealVector random_probabilities(Index n, Rng& rng, double floor = 0.05);

/// Random traceless Hermitian matrix with unit Frobenius norm.
ComplexMatrix random_traceless_hermitian(Index d, Rng& rng);

}  // namespace kidecomp
