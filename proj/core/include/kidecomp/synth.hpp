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

#include <vector>

#include "kidecomp/family.hpp"
#include "kidecomp/random.hpp"
#include "kidecomp/structure.hpp"

namespace kidecomp {

/// A family built directly in block form, with its known structure.
struct SynthFamily {
  StateFamily family;
  Structure truth;
  RealMatrix weights;                              // p^(s,l)
  std::vector<std::vector<ComplexMatrix>> j_states;  // [s][l]
  std::vector<ComplexMatrix> k_states;
};

struct SynthOptions {
  Index max_support = 12;
  Index max_factor = 3;
  Index min_states = 2;
  Index max_states = 5;
  /// Ambient coordinates outside the support.
  Index padding = 0;
  bool random_prior = false;
};

/// rho_s = gamma^dagger (sum_l p^(s,l) rho_J^(s,l) (x) rho_K^(l)) gamma with
/// gamma the top rows of a Haar unitary. Every weight is positive and all
/// component states are full rank, so the given blocks are the maximal
/// structure with probability one when blocks with d_J >= 2 see at least
/// two states.
SynthFamily constructed_family(const std::vector<BlockDims>& blocks, Index states, Rng& rng,
                               Index padding = 0, bool random_prior = false);

/// Random block list within `opts`, then constructed_family.
SynthFamily random_constructed_family(Rng& rng, const SynthOptions& opts = {});

/// Random block list with d_J, d_K in [1, max_factor] and total size at most
/// max_support.
std::vector<BlockDims> random_blocks(Rng& rng, Index max_support, Index max_factor);

}  // namespace kidecomp
