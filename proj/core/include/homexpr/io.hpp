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

// File formats.
//
// Group:      { "label": str, "dim": int,
//               "elements": [ "identity" | "swap-2q" | "pauli-x@<q>" | matrix ] }
// Matrix:     [[ [re, im], ... ], ...]   (row major)
// Circuit:    { "label": str, "qubits": int,
//               "gates": [ {"kind": "RX", "qubit": 0, "param": 0},
//                          {"kind": "CNOT", "control": 0, "target": 1},
//                          {"kind": "CZ", "qubits": [0, 1]}, ... ] }
// Ensemble:   { "states": [[ [re, im], ... ], ...], "weights": [ ... ] }
//             (weights optional, uniform when absent)
// Polynomial: [ { "coeff": [re, im], "entries": [[row, col], ...] }, ... ]
// Report:     { estimate, std_error, per_target_minima,
//               config: {M, N, refine_iters, refine_shrink, seed}, ansatz, group }
// Histogram:  CSV with header bin_lo,bin_hi,count
//
// Every parse failure throws ParseError naming the offending field.

#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "homexpr/circuit.hpp"
#include "homexpr/design.hpp"
#include "homexpr/expressibility.hpp"
#include "homexpr/symmetry.hpp"

namespace homexpr::io {

using Json = nlohmann::json;

/// Throws ParseError if the file is missing or not valid JSON.
Json read_json_file(const std::filesystem::path& path);
/// Writes `text` and throws InvalidArgument if the file cannot be opened.
void write_text_file(const std::filesystem::path& path, const std::string& text);

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);
ComplexVector vector_from_json(const Json& j);

SymmetryGroup group_from_json(const Json& j);
/// Explicit-matrix form; group_from_json(group_to_json(g)) reproduces g.
Json group_to_json(const SymmetryGroup& group);
CircuitAnsatz circuit_from_json(const Json& j);
Json circuit_to_json(const CircuitAnsatz& ansatz);
StateEnsemble ensemble_from_json(const Json& j);
Json ensemble_to_json(const StateEnsemble& ens);
Polynomial polynomial_from_json(const Json& j);

Json report_to_json(const ExpressibilityReport& report);
ExpressibilityReport report_from_json(const Json& j);

std::string histogram_to_csv(const FidelityHistogram& hist);

}  // namespace homexpr::io
