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

#include "kidecomp/synth.hpp"

#include "kidecomp/error.hpp"

namespace kidecomp {

std::vector<BlockDims> random_blocks(Rng& rng, Index max_support, Index max_factor) {
  std::vector<BlockDims> blocks;
  Index used = 0;
  const int target = rng.uniform_int(1, 4);
  for (int attempt = 0; attempt < 32 && static_cast<int>(blocks.size()) < target; ++attempt) {
    const BlockDims b{rng.uniform_int(1, static_cast<int>(max_factor)),
                      rng.uniform_int(1, static_cast<int>(max_factor))};
    if (used + b.size() > max_support) continue;
    blocks.push_back(b);
    used += b.size();
  }
  if (blocks.empty()) blocks.push_back({1, 1});
  return blocks;
}

SynthFamily constructed_family(const std::vector<BlockDims>& blocks, Index states, Rng& rng,
                               Index padding, bool random_prior) {
  if (blocks.empty() || states < 1) raise(ErrorCode::kEmptyFamily, "nothing to construct");
  const Index nb = static_cast<Index>(blocks.size());
  Index n = 0;
  for (const auto& b : blocks) n += b.size();
  const Index d = n + padding;

  SynthFamily out;
  out.truth = Structure(d, blocks, random_unitary(d, rng).topRows(n));
  out.weights = RealMatrix(states, nb);
  for (Index s = 0; s < states; ++s) out.weights.row(s) = random_probabilities(nb, rng).transpose();
  for (const auto& b : blocks) out.k_states.push_back(random_density(b.d_k, b.d_k, rng));
  out.j_states.resize(static_cast<std::size_t>(states));

  std::vector<ComplexMatrix> mats;
  for (Index s = 0; s < states; ++s) {
    ComplexMatrix inner = ComplexMatrix::Zero(n, n);
    for (Index l = 0; l < nb; ++l) {
      const BlockDims& b = blocks[static_cast<std::size_t>(l)];
      ComplexMatrix rj = random_density(b.d_j, b.d_j, rng);
      inner.block(out.truth.offset(l), out.truth.offset(l), b.size(), b.size()) =
          out.weights(s, l) * kron(rj, out.k_states[static_cast<std::size_t>(l)]);
      out.j_states[static_cast<std::size_t>(s)].push_back(std::move(rj));
    }
    mats.push_back(hermitian_part(out.truth.gamma().adjoint() * inner * out.truth.gamma()));
  }
  std::optional<RealVector> prior;
  if (random_prior) prior = random_probabilities(states, rng);
  out.family = StateFamily::from_matrices(mats, prior);
  return out;
}

SynthFamily random_constructed_family(Rng& rng, const SynthOptions& opts) {
  const std::vector<BlockDims> blocks = random_blocks(rng, opts.max_support, opts.max_factor);
  const Index states = rng.uniform_int(static_cast<int>(opts.min_states),
                                       static_cast<int>(opts.max_states));
  return constructed_family(blocks, states, rng, opts.padding, opts.random_prior);
}

}  // namespace kidecomp
