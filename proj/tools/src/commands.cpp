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

#include "kidecomp/cli/commands.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "kidecomp/applications.hpp"
#include "kidecomp/channels.hpp"
#include "kidecomp/cli/io.hpp"
#include "kidecomp/cli/report.hpp"
#include "kidecomp/error.hpp"

namespace kidecomp::cli {

namespace {

struct Loaded {
  StateFamily family;
  Tolerances tol;
};

Tolerances resolve_tolerances(const Json& doc, const std::string& source, const RunOptions& opts) {
  Tolerances tol = file_tolerances(doc, source);
  for (const auto& t : opts.tolerances) apply_tolerance_override(tol, t);
  tol.validate();
  return tol;
}

Loaded load_family(const std::string& path, const RunOptions& opts) {
  const Json doc = load_json(path);
  Tolerances tol = resolve_tolerances(doc, path, opts);
  StateFamily fam = family_from_json(doc, path, tol);
  return {std::move(fam), tol};
}

/// A second family (sigma file, tensor factor) read with the tolerances
/// already in force.
StateFamily load_family_with(const std::string& path, const Tolerances& tol) {
  return family_from_json(load_json(path), path, tol);
}

Json header(const char* kind, std::uint64_t seed, const Tolerances& tol) {
  Json r;
  r["kind"] = kind;
  r["version"] = kFormatVersion;
  r["seed"] = seed;
  r["tolerances"] = tolerances_to_json(tol);
  return r;
}

Json label_of(const StateFamily& f, Index s) { return s < 0 ? Json() : Json(f.label(s)); }

void emit(const Json& report, const RunOptions& opts, std::ostream& out) {
  const std::string text = opts.format == "text" ? render_text(report) : dump(report);
  if (opts.output.empty()) {
    out << text;
    out.flush();
    return;
  }
  std::ofstream f(opts.output, std::ios::binary | std::ios::trunc);
  if (!f) raise(ErrorCode::kValidationError, "cannot write " + opts.output);
  f << text;
  if (!f) raise(ErrorCode::kValidationError, "write failed for " + opts.output);
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "kidecomp: " << e.what() << "\n";
    return is_validation_error(e.code()) ? kExitValidation : kExitNumerical;
  } catch (const std::bad_alloc&) {
    err << "kidecomp: out of memory\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "kidecomp: " << e.what() << "\n";
    return kExitNumerical;
  }
}

void check_format(const RunOptions& opts) {
  if (opts.format != "json" && opts.format != "text") {
    raise(ErrorCode::kValidationError, "--format must be json or text");
  }
}

RealVector parse_weights(const std::string& text) {
  std::vector<double> w;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      raise(ErrorCode::kBadWeights, "--weights: \"" + item + "\" is not a number");
    }
    w.push_back(v);
  }
  if (w.empty()) raise(ErrorCode::kBadWeights, "--weights is empty");
  return Eigen::Map<const RealVector>(w.data(), static_cast<Index>(w.size()));
}

Json check_broadcast(const Loaded& in, std::uint64_t seed, bool& holds) {
  const BroadcastReport br = is_broadcastable(in.family, seed, in.tol);
  const DecomposedFamily d = decompose(in.family, seed, in.tol);
  holds = br.ok;
  Json r = header("check", seed, in.tol);
  r["check"] = "broadcast";
  r["holds"] = br.ok;
  r["blocks"] = blocks_to_json(d);
  r["witness_block"] = br.witness_block;
  r["max_commutator"] = br.max_commutator;
  r["commuting"] = br.commuting;
  Json modes = Json::array();
  if (br.ok) {
    for (auto m : {BroadcastMode::kProduct, BroadcastMode::kClassical, BroadcastMode::kQuantum}) {
      const BroadcastOutput o = broadcast_states(d, m);
      Json jm;
      jm["mode"] = broadcast_mode_name(m);
      jm["marginal_defect"] = o.marginal_defect;
      jm["block_defect"] = o.block_defect;
      modes.push_back(std::move(jm));
    }
  }
  r["modes"] = std::move(modes);
  return r;
}

Json check_imprint(const Loaded& in, const CheckInputs& ci, std::uint64_t seed, bool& holds) {
  const DecomposedFamily d = decompose(in.family, seed, in.tol);
  const ImprintReport ir = no_imprinting_holds(d);
  holds = ir.ok;
  Json r = header("check", seed, in.tol);
  r["check"] = "imprint";
  r["holds"] = ir.ok;
  r["blocks"] = blocks_to_json(d);
  r["weights"] = real_matrix_to_json(d.weights);
  Json off;
  if (!ir.ok) {
    off["s"] = ir.s;
    off["s_other"] = ir.s_other;
    off["label"] = label_of(in.family, ir.s);
    off["label_other"] = label_of(in.family, ir.s_other);
    off["block"] = ir.block;
  }
  off["max_difference"] = ir.max_difference;
  r["offending"] = std::move(off);
  if (!ci.sigma.empty()) {
    const StateFamily sigmas = load_family_with(ci.sigma, in.tol);
    const GeneralizedImprintReport g = generalized_no_imprinting(sigmas, d);
    Json jg;
    jg["holds"] = g.ok;
    jg["s"] = g.s;
    jg["s_other"] = g.s_other;
    jg["part"] = g.part;
    jg["max_difference"] = g.max_difference;
    r["generalized"] = std::move(jg);
    holds = holds && g.ok;
    r["holds"] = holds;
  }
  return r;
}

Json check_clone(const Loaded& in, const CheckInputs& ci, std::uint64_t seed, bool& holds) {
  if (ci.dim_a < 1 || ci.dim_b < 1) {
    raise(ErrorCode::kValidationError, "clone check needs --dim-a and --dim-b");
  }
  if (static_cast<Index>(ci.dim_a * ci.dim_b) != in.family.dim()) {
    raise(ErrorCode::kDimensionMismatch,
          "dim-a * dim-b = " + std::to_string(ci.dim_a * ci.dim_b) + " but family dim is " +
              std::to_string(in.family.dim()));
  }
  const std::vector<ComplexMatrix> chis = in.family.matrices();
  const SequentialCloneReport cr = sequential_clonability(chis, ci.dim_a, ci.dim_b, seed, in.tol);
  holds = cr.clonable;
  Json r = header("check", seed, in.tol);
  r["check"] = "clone";
  r["holds"] = cr.clonable;
  r["dim_a"] = ci.dim_a;
  r["dim_b"] = ci.dim_b;
  r["pure_shortcut"] = cr.pure_shortcut;
  Json blocks = Json::array();
  for (const auto& b : cr.blocks) blocks.push_back(Json{{"d_j", b.d_j}, {"d_k", b.d_k}});
  r["marginal_blocks"] = std::move(blocks);
  r["max_normalized_overlap"] = cr.min_pairwise_orthogonality_defect;
  Json off;
  off["s"] = cr.s;
  off["s_other"] = cr.s_other;
  off["label"] = label_of(in.family, cr.s);
  off["label_other"] = label_of(in.family, cr.s_other);
  off["block"] = cr.block;
  r["offending"] = std::move(off);
  return r;
}

Json check_channel(const Loaded& in, const CheckInputs& ci, std::uint64_t seed, bool& holds) {
  if (ci.kraus.empty()) raise(ErrorCode::kValidationError, "channel check needs --kraus <file>");
  const KrausChannel ch = kraus_from_json(load_json(ci.kraus), ci.kraus);
  if (ch.input_dim() != in.family.dim() || ch.output_dim() != in.family.dim()) {
    raise(ErrorCode::kDimensionMismatch, "Kraus operators do not act on the family's space");
  }
  const PreservationReport pr = preserves_family(ch, in.family);
  const DecomposedFamily d = decompose(in.family, seed, in.tol);
  const BlockFormReport bf = has_block_form(ch, d.structure);
  holds = pr.ok;
  Json r = header("check", seed, in.tol);
  r["check"] = "channel";
  r["holds"] = pr.ok;
  r["blocks"] = blocks_to_json(d);
  r["kraus_count"] = static_cast<Index>(ch.kraus().size());
  r["trace_preservation_defect"] = ch.trace_preservation_defect();
  r["max_deviation"] = pr.max_deviation;
  r["worst_state"] = pr.worst_state;
  r["worst_label"] = label_of(in.family, pr.worst_state);
  Json jb;
  jb["ok"] = bf.ok;
  jb["max_violation"] = bf.max_violation;
  Json viol = Json::array();
  for (const auto& v : bf.violations) {
    viol.push_back(Json{{"block", v.block}, {"j_out", v.j_out}, {"j_in", v.j_in}, {"value", v.value}});
  }
  jb["violations"] = std::move(viol);
  r["block_form"] = std::move(jb);
  return r;
}

}  // namespace

std::uint64_t parse_seed(const std::string& text) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    if (!text.empty() && text[0] == '-') throw std::invalid_argument("negative");
    v = std::stoull(text, &used, 10);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    raise(ErrorCode::kValidationError, "seed \"" + text + "\" is not a nonnegative integer");
  }
  return v;
}

std::uint64_t env_seed() {
  const char* s = std::getenv("KIDECOMP_SEED");
  if (s == nullptr || *s == '\0') return 0;
  return parse_seed(s);
}

int run_decompose(const std::string& input, const RunOptions& opts, std::ostream& out,
                  std::ostream& err) {
  return guarded(err, [&] {
    check_format(opts);
    const Loaded in = load_family(input, opts);
    const DecomposedFamily d = decompose(in.family, opts.seed, in.tol);
    emit(decompose_report(d, check_maximal(d, in.tol), in.tol, opts.seed), opts, out);
    return static_cast<int>(kExitOk);
  });
}

int run_check(const CheckInputs& ci, const RunOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    check_format(opts);
    const Loaded in = load_family(ci.input, opts);
    bool holds = false;
    Json r;
    if (ci.kind == "broadcast") {
      r = check_broadcast(in, opts.seed, holds);
    } else if (ci.kind == "imprint") {
      r = check_imprint(in, ci, opts.seed, holds);
    } else if (ci.kind == "clone") {
      r = check_clone(in, ci, opts.seed, holds);
    } else if (ci.kind == "channel") {
      r = check_channel(in, ci, opts.seed, holds);
    } else {
      raise(ErrorCode::kValidationError, "unknown check kind \"" + ci.kind + "\"");
    }
    emit(r, opts, out);
    return static_cast<int>(holds ? kExitOk : kExitFails);
  });
}

int run_entropy(const EntropyInputs& ei, const RunOptions& opts, std::ostream& out,
                std::ostream& err) {
  return guarded(err, [&] {
    check_format(opts);
    if (!ei.tensor.empty()) {
      if (ei.tensor.size() != 2) raise(ErrorCode::kValidationError, "--tensor takes two files");
      if (!ei.weights.empty() || !ei.input.empty()) {
        raise(ErrorCode::kValidationError, "--tensor cannot be combined with an input or --weights");
      }
      const Loaded a = load_family(ei.tensor[0], opts);
      const StateFamily b = load_family_with(ei.tensor[1], a.tol);
      const DecomposedFamily da = decompose(a.family, opts.seed, a.tol);
      const DecomposedFamily db = decompose(b, opts.seed, a.tol);
      const StateFamily ab = tensor_family(a.family, b, a.tol);
      const DecomposedFamily dab = decompose(ab, opts.seed, a.tol);
      const DecomposedFamily product = tensor_structure(da, db, a.tol);
      const EntropyReport ea = entropy_report(da, a.tol);
      const EntropyReport eb = entropy_report(db, a.tol);
      const EntropyReport eab = entropy_report(dab, a.tol);
      Json r = header("entropy", opts.seed, a.tol);
      r["mode"] = "tensor";
      r["a"] = entropy_to_json(ea);
      r["b"] = entropy_to_json(eb);
      r["product"] = entropy_to_json(eab);
      Json add;
      add["i_c"] = eab.i_c - ea.i_c - eb.i_c;
      add["i_nc"] = eab.i_nc - ea.i_nc - eb.i_nc;
      add["i_r"] = eab.i_r - ea.i_r - eb.i_r;
      add["total"] = eab.total - ea.total - eb.total;
      r["additivity_defect"] = std::move(add);
      r["product_blocks"] = blocks_to_json(dab);
      r["structure_matches_product"] = structures_equivalent(dab.structure, product.structure);
      emit(r, opts, out);
      return static_cast<int>(kExitOk);
    }
    if (ei.input.empty()) raise(ErrorCode::kValidationError, "entropy needs an input file or --tensor");
    const Loaded in = load_family(ei.input, opts);
    const DecomposedFamily d = decompose(in.family, opts.seed, in.tol);
    const RealVector w = ei.weights.empty() ? in.family.weights_or_uniform() : parse_weights(ei.weights);
    const EntropyReport e = entropy_report(d, w, in.tol);
    Json r = header("entropy", opts.seed, in.tol);
    r["mode"] = "single";
    std::vector<double> wv(w.data(), w.data() + w.size());
    r["weights"] = wv;
    r["blocks"] = blocks_to_json(d);
    r["entropy"] = entropy_to_json(e);
    r["accounting_defect"] = e.total - e.direct;
    emit(r, opts, out);
    return static_cast<int>(kExitOk);
  });
}

}  // namespace kidecomp::cli
