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

// Statevector simulation of parameterized circuits.
//
// Conventions:
//   * qubit 0 is the least significant bit of the basis index;
//   * R_P(theta) = exp(-i theta P / 2), parameters live in [0, 2pi);
//   * RSWAP(theta) = exp(-i theta SWAP / 2), which is I at 0 and -i SWAP at pi.
// Gates are applied in place as 2x2 / 4x4 blocks; no 2^n x 2^n matrix is built.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "homexpr/linalg.hpp"
#include "homexpr/random.hpp"

namespace homexpr {

enum class GateKind { kRX, kRY, kRZ, kH, kCNOT, kCZ, kSWAP, kRSWAP };

/// Largest register the simulator accepts.
inline constexpr int kMaxQubits = 8;

bool is_parameterized(GateKind kind);
int arity(GateKind kind);
std::string_view gate_name(GateKind kind);
/// Inverse of gate_name(); throws InvalidArgument for unknown names.
GateKind parse_gate_kind(std::string_view name);

/// Local gate matrix. Two-qubit gates use the local basis index
/// b(qubits[0]) + 2 b(qubits[1]), so for CNOT qubits[0] is the control.
ComplexMatrix gate_matrix(GateKind kind, double angle = 0.0);

struct GateSpec {
  GateKind kind;
  std::vector<int> qubits;
  /// Present iff the kind is parameterized.
  std::optional<int> param_index;
};

class CircuitAnsatz {
 public:
  /// Validates arity, qubit range / distinctness and parameter indexing;
  /// every index in [0, num_params) must drive at least one gate.
  CircuitAnsatz(int num_qubits, std::vector<GateSpec> gates, int num_params, std::string label);
  /// As above with num_params = 1 + largest parameter index.
  CircuitAnsatz(int num_qubits, std::vector<GateSpec> gates, std::string label);

  int num_qubits() const { return num_qubits_; }
  int dim() const { return 1 << num_qubits_; }
  int num_params() const { return num_params_; }
  const std::vector<GateSpec>& gates() const { return gates_; }
  const std::string& label() const { return label_; }

  /// Copy with one more gate at the end. A parameterized gate gets the next
  /// free parameter index.
  CircuitAnsatz with_appended(GateKind kind, std::vector<int> qubits, std::string label) const;

 private:
  int num_qubits_;
  std::vector<GateSpec> gates_;
  int num_params_;
  std::string label_;
};

using ParameterVector = std::vector<double>;

/// Output state of the ansatz on |0...0>.
/// Throws InvalidArgument when theta has the wrong length.
StateVector simulate(const CircuitAnsatz& ansatz, std::span<const double> theta);

/// Allocation-free form of simulate() for inner loops; `out` must hold dim()
/// amplitudes and is overwritten.
void simulate_into(const CircuitAnsatz& ansatz, std::span<const double> theta,
                   std::span<Complex> out);

/// "paper-circuit-1": RX RX | RY RY | CNOT(0->1).
/// "paper-circuit-2": RX RX | H H | CZ | RX RX.
/// The leading RX pair is the angle-encoding layer and is part of the
/// parameter space. Throws InvalidArgument ("UnknownCircuit") otherwise.
CircuitAnsatz builtin_circuit(const std::string& name);

/// Each component independent uniform on [0, 2pi).
ParameterVector sample_parameters(const CircuitAnsatz& ansatz, RandomSource& rng);
void sample_parameters_into(const CircuitAnsatz& ansatz, RandomSource& rng,
                            std::span<double> out);

}  // namespace homexpr
