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

#include "kidecomp/cli/report.hpp"

#include <cmath>
#include <cstdio>

#include "kidecomp/error.hpp"

namespace kidecomp::cli {

namespace {

const char* condition_name(MaximalityCondition c) {
  switch (c) {
    case MaximalityCondition::kReassembly:
      return "reassembly";
    case MaximalityCondition::kIrreducible:
      return "irreducible";
    case MaximalityCondition::kNonIsomorphic:
      return "non_isomorphic";
  }
  return "unknown";
}

std::string scalar_text(const Json& j) {
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (!std::isfinite(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

bool is_scalar_list(const Json& j) {
  for (const auto& e : j) {
    if (e.is_structured()) return false;
  }
  return true;
}

bool is_complex_pair(const Json& j) { return j.is_array() && j.size() == 2 && j[0].is_number(); }

std::string pair_text(const Json& j) {
  return "(" + scalar_text(j[0]) + ", " + scalar_text(j[1]) + ")";
}

void render(const Json& j, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const Json& v = it.value();
      if (!v.is_structured() || (v.is_array() && (v.empty() || is_scalar_list(v)))) {
        out += pad + it.key() + ": ";
        if (v.is_array()) {
          out += "[";
          for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + scalar_text(v[i]);
          out += "]";
        } else {
          out += scalar_text(v);
        }
        out += "\n";
      } else {
        out += pad + it.key() + ":\n";
        render(v, depth + 1, out);
      }
    }
    return;
  }
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      const Json& e = j[i];
      if (!e.is_structured()) {
        out += pad + "- " + scalar_text(e) + "\n";
      } else if (e.is_array() && !e.empty() && is_complex_pair(e[0])) {
        out += pad + "-";
        for (const auto& z : e) out += " " + pair_text(z);
        out += "\n";
      } else if (e.is_array() && is_scalar_list(e)) {
        out += pad + "-";
        for (const auto& z : e) out += " " + scalar_text(z);
        out += "\n";
      } else {
        out += pad + "- [" + std::to_string(i) + "]\n";
        render(e, depth + 1, out);
      }
    }
    return;
  }
  out += pad + scalar_text(j) + "\n";
}

const Json& need(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    raise(ErrorCode::kParseError, std::string("report: missing field \"") + key + "\"");
  }
  return j[key];
}

}  // namespace

Json tolerances_to_json(const Tolerances& tol) {
  Json j = Json::object();
  for (auto name : kToleranceNames) j[std::string(name)] = *tol.get(name);
  return j;
}

Json blocks_to_json(const DecomposedFamily& decomp) {
  const RealVector p_all = decomp.block_weights();
  Json blocks = Json::array();
  for (Index l = 0; l < decomp.block_count(); ++l) {
    const BlockDims& b = decomp.structure.block(l);
    Json jb;
    jb["d_j"] = b.d_j;
    jb["d_k"] = b.d_k;
    jb["p_all"] = p_all(l);
    blocks.push_back(std::move(jb));
  }
  return blocks;
}

Json entropy_to_json(const EntropyReport& e) {
  Json j;
  j["i_c"] = e.i_c;
  j["i_nc"] = e.i_nc;
  j["i_r"] = e.i_r;
  j["total"] = e.total;
  j["direct"] = e.direct;
  j["compression_qubits"] = e.compression_qubits;
  j["classical_bits"] = e.classical_bits;
  j["ebits"] = e.ebits;
  Json per = Json::array();
  for (const auto& b : e.per_block) {
    Json jb;
    jb["p"] = b.p;
    jb["s_j"] = b.s_j;
    jb["s_k"] = b.s_k;
    per.push_back(std::move(jb));
  }
  j["per_block"] = std::move(per);
  return j;
}

Json decompose_report(const DecomposedFamily& decomp, const MaximalityReport& maximal,
                      const Tolerances& tol, std::uint64_t seed) {
  const Structure& st = decomp.structure;
  Json r;
  r["kind"] = "decompose";
  r["version"] = kFormatVersion;
  r["seed"] = seed;
  r["tolerances"] = tolerances_to_json(tol);
  r["dim"] = st.ambient_dim();
  r["support_dim"] = st.support_dim();
  r["labels"] = decomp.family.labels();
  r["blocks"] = blocks_to_json(decomp);
  r["weights"] = real_matrix_to_json(decomp.weights);
  r["entropy"] = entropy_to_json(entropy_report(decomp, tol));
  r["refinement_index"] = refinement_index(st);
  r["refinement_bound"] = refinement_bound(st.support_dim());
  r["refinement_trace"] = decomp.refinement_trace;

  Json res;
  res["reassembly"] = decomp.reassembly_residual();
  res["axiom_defect"] = st.axiom_defect();
  res["maximality_ok"] = maximal.ok;
  Json viol = Json::array();
  for (const auto& v : maximal.violated) {
    Json jv;
    jv["condition"] = condition_name(v.condition);
    jv["block"] = v.block;
    jv["other_block"] = v.other_block;
    jv["value"] = v.value;
    viol.push_back(std::move(jv));
  }
  res["violations"] = std::move(viol);
  r["residuals"] = std::move(res);

  r["gamma"] = matrix_to_json(st.gamma());
  Json comps;
  Json js = Json::array();
  for (const auto& row : decomp.j_states) {
    Json jr = Json::array();
    for (const auto& m : row) jr.push_back(m ? matrix_to_json(*m) : Json());
    js.push_back(std::move(jr));
  }
  comps["j_states"] = std::move(js);
  Json ks = Json::array();
  for (const auto& m : decomp.k_states) ks.push_back(matrix_to_json(m));
  comps["k_states"] = std::move(ks);
  r["components"] = std::move(comps);
  return r;
}

std::vector<ComplexMatrix> reassemble_from_report(const Json& report) {
  const Json& blocks = need(report, "blocks");
  const Json& weights = need(report, "weights");
  const Json& comps = need(report, "components");
  const Json& js = need(comps, "j_states");
  const Json& ks = need(comps, "k_states");
  const ComplexMatrix gamma = matrix_from_json(need(report, "gamma"), "report.gamma");
  if (!blocks.is_array() || !weights.is_array() || !js.is_array() || !ks.is_array() ||
      ks.size() != blocks.size()) {
    raise(ErrorCode::kParseError, "report: inconsistent block lists");
  }
  const std::size_t nb = blocks.size();
  std::vector<BlockDims> dims;
  Index total = 0;
  for (const auto& b : blocks) {
    dims.push_back({need(b, "d_j").get<Index>(), need(b, "d_k").get<Index>()});
    total += dims.back().size();
  }
  if (total != gamma.rows()) raise(ErrorCode::kParseError, "report: gamma does not match blocks");

  std::vector<ComplexMatrix> out;
  for (std::size_t s = 0; s < weights.size(); ++s) {
    ComplexMatrix core = ComplexMatrix::Zero(total, total);
    Index off = 0;
    for (std::size_t l = 0; l < nb; ++l) {
      const Index n = dims[l].size();
      const double p = weights[s][l].get<double>();
      const Json& jm = js[s][l];
      if (!jm.is_null()) {
        const ComplexMatrix rj = matrix_from_json(jm, "report.j_states", dims[l].d_j, dims[l].d_j);
        const ComplexMatrix rk = matrix_from_json(ks[l], "report.k_states", dims[l].d_k, dims[l].d_k);
        core.block(off, off, n, n) = p * kron(rj, rk);
      }
      off += n;
    }
    out.push_back(gamma.adjoint() * core * gamma);
  }
  return out;
}

std::string render_text(const Json& report) {
  std::string out;
  render(report, 0, out);
  return out;
}

}  // namespace kidecomp::cli
