// Copyright 2026 The homexpr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "homexpr/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "homexpr/errors.hpp"

namespace homexpr::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where + ": expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) fail(where + ": missing field '" + key + "'");
  return *it;
}

int as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where + ": expected an integer");
  return j.get<int>();
}

Complex complex_from_json(const Json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    fail(where + ": expected [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidArgument("cannot write '" + path.string() + "'");
  out << text;
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) fail("matrix: expected a non-empty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) fail("matrix: rows must be non-empty arrays");
  ComplexMatrix m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) fail("matrix: row " + std::to_string(r) + " is ragged");
    for (std::size_t c = 0; c < cols; ++c) {
      m(r, c) = complex_from_json(j[r][c], "matrix entry (" + std::to_string(r) + "," +
                                               std::to_string(c) + ")");
    }
  }
  return m;
}

ComplexVector vector_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) fail("state: expected a non-empty amplitude array");
  ComplexVector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(i) = complex_from_json(j[i], "amplitude " + std::to_string(i));
  }
  return v;
}

SymmetryGroup group_from_json(const Json& j) {
  const int dim = as_int(field(j, "dim", "group"), "group.dim");
  if (dim < 1) fail("group.dim must be positive");
  std::string label = "custom";
  if (j.contains("label")) {
    if (!j["label"].is_string()) fail("group.label: expected a string");
    label = j["label"].get<std::string>();
  }
  const Json& elems = field(j, "elements", "group");
  if (!elems.is_array() || elems.empty()) fail("group.elements: expected a non-empty array");
  std::vector<UnitaryMatrix> elements;
  for (std::size_t k = 0; k < elems.size(); ++k) {
    const std::string where = "group.elements[" + std::to_string(k) + "]";
    try {
      if (elems[k].is_string()) {
        elements.push_back(builtin_element(elems[k].get<std::string>(), dim));
      } else {
        ComplexMatrix m = matrix_from_json(elems[k]);
        if (m.rows() != dim || m.cols() != dim) fail(where + ": expected a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
        elements.emplace_back(std::move(m));
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail(where + ": " + e.what());
    }
  }
  return verify_group(std::move(elements), kClosureTol, std::move(label));
}

Json group_to_json(const SymmetryGroup& group) {
  Json elements = Json::array();
  for (const auto& h : group.elements()) elements.push_back(matrix_to_json(h.matrix()));
  return {{"label", group.label()}, {"dim", group.dim()}, {"elements", std::move(elements)}};
}

CircuitAnsatz circuit_from_json(const Json& j) {
  const int qubits = as_int(field(j, "qubits", "circuit"), "circuit.qubits");
  std::string label = "custom-circuit";
  if (j.contains("label")) {
    if (!j["label"].is_string()) fail("circuit.label: expected a string");
    label = j["label"].get<std::string>();
  }
  const Json& gates_json = field(j, "gates", "circuit");
  if (!gates_json.is_array()) fail("circuit.gates: expected an array");
  std::vector<GateSpec> gates;
  for (std::size_t k = 0; k < gates_json.size(); ++k) {
    const std::string where = "circuit.gates[" + std::to_string(k) + "]";
    const Json& g = gates_json[k];
    const Json& kind_json = field(g, "kind", where);
    if (!kind_json.is_string()) fail(where + ".kind: expected a string");
    GateSpec spec{};
    try {
      spec.kind = parse_gate_kind(kind_json.get<std::string>());
    } catch (const InvalidArgument& e) {
      fail(where + ": " + e.what());
    }
    if (g.contains("qubits")) {
      if (!g["qubits"].is_array()) fail(where + ".qubits: expected an array");
      for (const auto& q : g["qubits"]) spec.qubits.push_back(as_int(q, where + ".qubits"));
    } else if (g.contains("qubit")) {
      spec.qubits.push_back(as_int(g["qubit"], where + ".qubit"));
    } else if (g.contains("control") && g.contains("target")) {
      spec.qubits.push_back(as_int(g["control"], where + ".control"));
      spec.qubits.push_back(as_int(g["target"], where + ".target"));
    } else {
      fail(where + ": missing qubit operands");
    }
    if (g.contains("param")) spec.param_index = as_int(g["param"], where + ".param");
    gates.push_back(std::move(spec));
  }
  try {
    if (j.contains("params")) {
      return CircuitAnsatz(qubits, std::move(gates), as_int(j["params"], "circuit.params"),
                           std::move(label));
    }
    return CircuitAnsatz(qubits, std::move(gates), std::move(label));
  } catch (const ParseError&) {
    throw;
  } catch (const InvalidArgument& e) {
    fail(std::string("circuit: ") + e.what());
  }
}

Json circuit_to_json(const CircuitAnsatz& ansatz) {
  Json gates = Json::array();
  for (const auto& g : ansatz.gates()) {
    Json gj = {{"kind", std::string(gate_name(g.kind))}};
    if (g.qubits.size() == 1) {
      gj["qubit"] = g.qubits[0];
    } else if (g.kind == GateKind::kCNOT) {
      gj["control"] = g.qubits[0];
      gj["target"] = g.qubits[1];
    } else {
      gj["qubits"] = g.qubits;
    }
    if (g.param_index) gj["param"] = *g.param_index;
    gates.push_back(std::move(gj));
  }
  return {{"label", ansatz.label()},
          {"qubits", ansatz.num_qubits()},
          {"params", ansatz.num_params()},
          {"gates", std::move(gates)}};
}

StateEnsemble ensemble_from_json(const Json& j) {
  const Json& states_json = field(j, "states", "ensemble");
  if (!states_json.is_array() || states_json.empty()) fail("ensemble.states: expected a non-empty array");
  std::vector<StateVector> states;
  for (std::size_t k = 0; k < states_json.size(); ++k) {
    try {
      states.emplace_back(vector_from_json(states_json[k]));
    } catch (const ParseError& e) {
      fail("ensemble.states[" + std::to_string(k) + "]: " + e.what());
    } catch (const Error& e) {
      fail("ensemble.states[" + std::to_string(k) + "]: " + e.what());
    }
  }
  try {
    if (!j.contains("weights")) return StateEnsemble::uniform(std::move(states));
    const Json& w = j["weights"];
    if (!w.is_array()) fail("ensemble.weights: expected an array");
    std::vector<double> weights;
    for (const auto& x : w) {
      if (!x.is_number()) fail("ensemble.weights: expected numbers");
      weights.push_back(x.get<double>());
    }
    return StateEnsemble(std::move(states), std::move(weights));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    fail(std::string("ensemble: ") + e.what());
  }
}

Json ensemble_to_json(const StateEnsemble& ens) {
  Json states = Json::array();
  for (const auto& s : ens.states()) {
    Json amps = Json::array();
    for (Eigen::Index i = 0; i < s.amplitudes().size(); ++i) amps.push_back(complex_to_json(s[i]));
    states.push_back(std::move(amps));
  }
  return {{"states", std::move(states)}, {"weights", ens.weights()}};
}

Polynomial polynomial_from_json(const Json& j) {
  if (!j.is_array()) fail("polynomial: expected an array of monomials");
  Polynomial poly;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string where = "polynomial[" + std::to_string(k) + "]";
    Monomial m;
    m.coeff = complex_from_json(field(j[k], "coeff", where), where + ".coeff");
    const Json& entries = field(j[k], "entries", where);
    if (!entries.is_array()) fail(where + ".entries: expected an array");
    for (const auto& e : entries) {
      if (!e.is_array() || e.size() != 2) fail(where + ".entries: expected [row, col] pairs");
      m.entries.emplace_back(as_int(e[0], where + ".entries"), as_int(e[1], where + ".entries"));
    }
    poly.push_back(std::move(m));
  }
  return poly;
}

Json report_to_json(const ExpressibilityReport& report) {
  Json j;
  j["estimate"] = report.estimate;
  j["std_error"] = report.std_error;
  j["per_target_minima"] = report.per_target_minima;
  j["config"] = {{"M", report.config.haar_samples},
                 {"N", report.config.theta_samples},
                 {"refine_iters", report.config.refine_iters},
                 {"refine_shrink", report.config.refine_shrink},
                 {"seed", report.config.seed}};
  j["ansatz"] = report.ansatz;
  j["group"] = report.group;
  j["upper_bound"] = report.upper_bound;
  return j;
}

ExpressibilityReport report_from_json(const Json& j) {
  try {
    ExpressibilityReport r;
    r.estimate = field(j, "estimate", "report").get<double>();
    r.std_error = field(j, "std_error", "report").get<double>();
    r.per_target_minima = field(j, "per_target_minima", "report").get<std::vector<double>>();
    const Json& c = field(j, "config", "report");
    r.config.haar_samples = field(c, "M", "report.config").get<std::uint64_t>();
    r.config.theta_samples = field(c, "N", "report.config").get<std::uint64_t>();
    r.config.refine_iters = field(c, "refine_iters", "report.config").get<int>();
    r.config.refine_shrink = field(c, "refine_shrink", "report.config").get<double>();
    r.config.seed = field(c, "seed", "report.config").get<std::uint64_t>();
    r.ansatz = field(j, "ansatz", "report").get<std::string>();
    r.group = field(j, "group", "report").get<std::string>();
    r.upper_bound = j.value("upper_bound", false);
    return r;
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("report: ") + e.what());
  }
}

std::string histogram_to_csv(const FidelityHistogram& hist) {
  std::ostringstream out;
  out << "bin_lo,bin_hi,count\n";
  char line[96];
  for (int b = 0; b < hist.bins; ++b) {
    std::snprintf(line, sizeof line, "%.10f,%.10f,%llu\n", hist.bin_lo(b), hist.bin_hi(b),
                  static_cast<unsigned long long>(hist.counts[b]));
    out << line;
  }
  return out.str();
}

}  // namespace homexpr::io
