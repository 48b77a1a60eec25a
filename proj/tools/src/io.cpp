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

#include "kidecomp/cli/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "kidecomp/error.hpp"

namespace kidecomp::cli {

namespace {

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  raise(ErrorCode::kParseError, where + ": " + what);
}

std::string format_number(double v) {
  if (!std::isfinite(v)) return "null";
  if (v == 0.0) return "0.0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

void write(const Json& j, bool pretty, int depth, std::string& out) {
  const std::string pad = pretty ? std::string(static_cast<std::size_t>(2 * (depth + 1)), ' ') : "";
  const std::string close_pad = pretty ? std::string(static_cast<std::size_t>(2 * depth), ' ') : "";
  const char* nl = pretty ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad;
        out += Json(it.key()).dump();
        out += pretty ? ": " : ":";
        write(it.value(), pretty, depth + 1, out);
      }
      out += nl;
      out += close_pad;
      out += "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // arrays of scalars stay on one line
      bool flat = true;
      for (const auto& e : j) flat &= !e.is_structured() || (e.is_array() && e.size() == 2 && e[0].is_number());
      out += "[";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? (pretty ? ", " : ",") : ",";
        if (!flat) {
          out += nl;
          out += pad;
        }
        first = false;
        write(e, pretty, depth + 1, out);
      }
      if (!flat) {
        out += nl;
        out += close_pad;
      }
      out += "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_number(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

double number_at(const Json& j, const std::string& where) {
  if (!j.is_number()) parse_fail(where, "expected a number");
  return j.get<double>();
}

Index count_at(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 1) {
    parse_fail(where, "expected a positive integer");
  }
  return static_cast<Index>(j.get<long long>());
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) parse_fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) parse_fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

void check_version(const Json& doc, const std::string& source) {
  const Json& v = field(doc, "version", source);
  if (!v.is_string()) parse_fail(source + ".version", "expected a string");
  if (v.get<std::string>() != kFormatVersion) {
    parse_fail(source + ".version", "unsupported version \"" + v.get<std::string>() + "\"");
  }
}

}  // namespace

Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    parse_fail(source, "malformed JSON at byte " + std::to_string(e.byte));
  }
}

Json load_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_fail(path, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

std::string dump(const Json& j, bool pretty) {
  std::string out;
  write(j, pretty, 0, out);
  if (pretty) out += "\n";
  return out;
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json real_matrix_to_json(const RealMatrix& m) {
  Json rows = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& where, Index rows, Index cols) {
  if (!j.is_array() || j.empty()) parse_fail(where, "expected a non-empty list of rows");
  const auto nr = static_cast<Index>(j.size());
  if (rows >= 0 && nr != rows) {
    parse_fail(where, "expected " + std::to_string(rows) + " rows, found " + std::to_string(nr));
  }
  Index nc = -1;
  ComplexMatrix m;
  for (Index r = 0; r < nr; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    const std::string rw = where + "[" + std::to_string(r) + "]";
    if (!row.is_array()) parse_fail(rw, "expected a row of [re, im] pairs");
    if (nc < 0) {
      nc = static_cast<Index>(row.size());
      if (cols >= 0 && nc != cols) {
        parse_fail(rw, "expected " + std::to_string(cols) + " entries, found " + std::to_string(nc));
      }
      if (nc == 0) parse_fail(rw, "empty row");
      m.resize(nr, nc);
    } else if (static_cast<Index>(row.size()) != nc) {
      parse_fail(rw, "ragged row: expected " + std::to_string(nc) + " entries");
    }
    for (Index c = 0; c < nc; ++c) {
      const Json& e = row[static_cast<std::size_t>(c)];
      const std::string ew = rw + "[" + std::to_string(c) + "]";
      if (!e.is_array() || e.size() != 2) parse_fail(ew, "expected an [re, im] pair");
      m(r, c) = Complex(number_at(e[0], ew + "[0]"), number_at(e[1], ew + "[1]"));
    }
  }
  return m;
}

Tolerances file_tolerances(const Json& doc, const std::string& source, Tolerances base) {
  if (!doc.is_object()) parse_fail(source, "expected an object");
  auto it = doc.find("tolerances");
  if (it == doc.end() || it->is_null()) return base;
  const std::string where = source + ".tolerances";
  if (!it->is_object()) parse_fail(where, "expected an object");
  for (auto t = it->begin(); t != it->end(); ++t) {
    const double v = number_at(t.value(), where + "." + t.key());
    if (!base.set(t.key(), v)) parse_fail(where + "." + t.key(), "unknown tolerance");
  }
  return base;
}

StateFamily family_from_json(const Json& doc, const std::string& source, const Tolerances& tol) {
  check_version(doc, source);
  const Index dim = count_at(field(doc, "dim", source), source + ".dim");
  const Json& states = field(doc, "states", source);
  if (!states.is_array()) parse_fail(source + ".states", "expected a list");
  if (states.empty()) raise(ErrorCode::kEmptyFamily, source + ".states: family is empty");

  std::vector<DensityMatrix> dms;
  std::vector<std::string> labels;
  std::vector<double> weights;
  for (std::size_t s = 0; s < states.size(); ++s) {
    const std::string where = source + ".states[" + std::to_string(s) + "]";
    const Json& st = states[s];
    std::string label = std::to_string(s);
    if (st.is_object() && st.contains("label")) {
      if (!st["label"].is_string()) parse_fail(where + ".label", "expected a string");
      label = st["label"].get<std::string>();
    }
    const ComplexMatrix m = matrix_from_json(field(st, "matrix", where), where + ".matrix", dim, dim);
    if (st.contains("weight") && !st["weight"].is_null()) {
      weights.push_back(number_at(st["weight"], where + ".weight"));
    }
    try {
      dms.emplace_back(m, tol);
    } catch (const Error& e) {
      raise(ErrorCode::kValidationError, "state \"" + label + "\": " + e.what());
    }
    labels.push_back(std::move(label));
  }
  std::optional<RealVector> w;
  if (!weights.empty()) {
    if (weights.size() != states.size()) {
      raise(ErrorCode::kBadWeights, source + ": weights must be given for all states or none");
    }
    w = Eigen::Map<const RealVector>(weights.data(), static_cast<Index>(weights.size()));
  }
  return StateFamily(std::move(dms), std::move(labels), w, tol);
}

Json family_to_json(const StateFamily& family) {
  Json doc;
  doc["version"] = kFormatVersion;
  doc["dim"] = family.dim();
  Json states = Json::array();
  for (Index s = 0; s < family.size(); ++s) {
    Json st;
    st["label"] = family.label(s);
    if (family.weights()) st["weight"] = (*family.weights())(s);
    st["matrix"] = matrix_to_json(family.state(s).matrix());
    states.push_back(std::move(st));
  }
  doc["states"] = std::move(states);
  return doc;
}

KrausChannel kraus_from_json(const Json& doc, const std::string& source) {
  check_version(doc, source);
  const Index din = count_at(field(doc, "input_dim", source), source + ".input_dim");
  const Index dout = count_at(field(doc, "output_dim", source), source + ".output_dim");
  const Json& list = field(doc, "kraus", source);
  if (!list.is_array() || list.empty()) parse_fail(source + ".kraus", "expected a non-empty list");
  std::vector<ComplexMatrix> ks;
  for (std::size_t i = 0; i < list.size(); ++i) {
    ks.push_back(matrix_from_json(list[i], source + ".kraus[" + std::to_string(i) + "]", dout, din));
  }
  return KrausChannel(std::move(ks));
}

Json kraus_to_json(const KrausChannel& ch) {
  Json doc;
  doc["version"] = kFormatVersion;
  doc["input_dim"] = ch.input_dim();
  doc["output_dim"] = ch.output_dim();
  Json list = Json::array();
  for (const auto& k : ch.kraus()) list.push_back(matrix_to_json(k));
  doc["kraus"] = std::move(list);
  return doc;
}

void apply_tolerance_override(Tolerances& tol, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    raise(ErrorCode::kInvalidTolerance, "--tol expects name=value, got \"" + assignment + "\"");
  }
  const std::string name = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    raise(ErrorCode::kInvalidTolerance, "--tol " + name + ": \"" + text + "\" is not a number");
  }
  if (!tol.set(name, v)) raise(ErrorCode::kInvalidTolerance, "unknown tolerance \"" + name + "\"");
}

}  // namespace kidecomp::cli
