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

#include <algorithm>
#include <string>

#include "kidecomp/decompose.hpp"
#include "kidecomp/random.hpp"
#include "kidecomp/staralgebra.hpp"
#include "kidecomp/theorems.hpp"

namespace kidecomp {
namespace {

constexpr double kReassemblyTol = 1e-7;
constexpr double kProbeTol = 1e-8;

std::vector<ComplexMatrix> j_family(const DecomposedFamily& decomp, Index l, bool normalize) {
  const Index dj = decomp.structure.block(l).d_j;
  const RealVector p_all = decomp.block_weights();
  std::vector<ComplexMatrix> out;
  for (Index s = 0; s < decomp.state_count(); ++s) {
    const auto& js = decomp.j_states[static_cast<std::size_t>(s)][static_cast<std::size_t>(l)];
    if (js) {
      const double scale = normalize ? decomp.weights(s, l) / p_all(l) : decomp.weights(s, l);
      out.push_back(scale * *js);
    } else if (normalize) {
      out.push_back(ComplexMatrix::Zero(dj, dj));
    }
  }
  return out;
}

}  // namespace

bool MaximalityReport::has(MaximalityCondition c) const {
  return std::any_of(violated.begin(), violated.end(),
                     [c](const MaximalityViolation& v) { return v.condition == c; });
}

MaximalityReport check_maximal(const DecomposedFamily& decomp, const Tolerances& tol) {
  MaximalityReport report;
  const double residual = decomp.reassembly_residual();
  if (residual > kReassemblyTol) {
    report.violated.push_back({MaximalityCondition::kReassembly, -1, -1, residual});
  }
  const Index lcount = decomp.block_count();
  for (Index l = 0; l < lcount; ++l) {
    if (decomp.structure.block(l).d_j == 1) continue;
    const std::vector<ComplexMatrix> fam = j_family(decomp, l, false);
    const Index dim = fam.empty() ? 0 : commutant_of(fam, tol).size();
    if (fam.empty() || dim != 1) {
      report.violated.push_back(
          {MaximalityCondition::kIrreducible, l, -1, static_cast<double>(dim)});
    }
  }
  for (Index l = 0; l < lcount; ++l) {
    for (Index l2 = l + 1; l2 < lcount; ++l2) {
      if (decomp.structure.block(l).d_j != decomp.structure.block(l2).d_j) continue;
      const auto lam = intertwiners(j_family(decomp, l, true), j_family(decomp, l2, true), tol);
      if (!lam.empty()) {
        report.violated.push_back(
            {MaximalityCondition::kNonIsomorphic, l, l2, static_cast<double>(lam.size())});
      }
    }
  }
  report.ok = report.violated.empty();
  return report;
}

ProbeReport probe_refinement(const DecomposedFamily& decomp, int probes, std::uint64_t seed,
                             const Tolerances& tol) {
  ProbeReport report;
  report.probes = probes;
  Rng rng(seed);
  const Structure& st = decomp.structure;
  const ComplexMatrix rho_all = build_rho_all(decomp.family, tol).matrix();
  const Index lcount = st.block_count();
  Tolerances probe_tol = tol;
  probe_tol.zero = kProbeTol;

  auto note = [&report](const std::string& what) {
    if (report.splits_found++ == 0) report.first_witness = what;
  };

  for (int p = 0; p < probes; ++p) {
    const Index s = rng.uniform_int(0, static_cast<int>(decomp.state_count()) - 1);
    const Index l = rng.uniform_int(0, static_cast<int>(lcount) - 1);
    const BlockDims b = st.block(l);
    const ComplexMatrix rows = st.block_map(l);
    const ComplexMatrix blk_s = rows * decomp.family.state(s).matrix() * rows.adjoint();
    const ComplexMatrix blk_all = rows * rho_all * rows.adjoint();
    const ComplexMatrix ik = ComplexMatrix::Identity(b.d_k, b.d_k);

    // Classical split: compare (|a><a|V (x) 1) rho_s (...)^dagger with
    // (|a><a| (x) 1) rho_all (|a><a| (x) 1).
    const ComplexVector a = random_pure_state(b.d_j, rng);
    const ComplexMatrix v = random_unitary(b.d_j, rng);
    const ComplexMatrix pa = a * a.adjoint();
    const ComplexMatrix left = kron(pa * v, ik);
    const ComplexMatrix proj = kron(pa, ik);
    const ComplexMatrix x = hermitian_part(left * blk_s * left.adjoint());
    const ComplexMatrix y = hermitian_part(proj * blk_all * proj);
    if (x.trace().real() > kProbeTol) {
      try {
        theorem1_split(DensityMatrix(x, {}, Normalization::kAny),
                       DensityMatrix(y, {}, Normalization::kAny), probe_tol);
        note("classical split in block " + std::to_string(l) + " for state " + std::to_string(s));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kStatesIdentical) throw;
      }
    }

    // Coherent pairing between a (x) H_K^(l) and b (x) H_K^(l').
    if (lcount > 1) {
      Index l2 = rng.uniform_int(0, static_cast<int>(lcount) - 2);
      if (l2 >= l) ++l2;
      const BlockDims b2 = st.block(l2);
      const ComplexVector bvec = random_pure_state(b2.d_j, rng);
      const ComplexMatrix h1 = rows.adjoint() * kron(a, ik);
      const ComplexMatrix h2 =
          st.block_map(l2).adjoint() * kron(bvec, ComplexMatrix::Identity(b2.d_k, b2.d_k));
      ComplexMatrix both(h1.rows(), h1.cols() + h2.cols());
      both << h1, h2;
      const ComplexMatrix compressed =
          hermitian_part(both * both.adjoint() * decomp.family.state(s).matrix() * both *
                         both.adjoint());
      try {
        theorem2_pairing(DensityMatrix(compressed, {}, Normalization::kAny), h1, h2, probe_tol);
        note("coherent pairing between blocks " + std::to_string(l) + " and " +
             std::to_string(l2) + " for state " + std::to_string(s));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kZeroOffBlock) throw;
      }
    }
  }
  return report;
}

}  // namespace kidecomp
