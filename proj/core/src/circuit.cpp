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

#include "homexpr/circuit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "homexpr/errors.hpp"

namespace homexpr {

namespace {

constexpr std::array<std::pair<GateKind, std::string_view>, 8> kNames{{
    {GateKind::kRX, "RX"},
    {GateKind::kRY, "RY"},
    {GateKind::kRZ, "RZ"},
    {GateKind::kH, "H"},
    {GateKind::kCNOT, "CNOT"},
    {GateKind::kCZ, "CZ"},
    {GateKind::kSWAP, "SWAP"},
    {GateKind::kRSWAP, "RSWAP"},
}};

using Block2 = std::array<Complex, 4>;

Block2 single_qubit_block(GateKind kind, double angle) {
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  const Complex mis(0.0, -s);
  switch (kind) {
    case GateKind::kRX:
      return {c, mis, mis, c};
    case GateKind::kRY:
      return {c, -s, s, c};
    case GateKind::kRZ:
      return {Complex(c, -s), 0.0, 0.0, Complex(c, s)};
    case GateKind::kH: {
      const double r = std::numbers::sqrt2 / 2.0;
      return {r, r, r, -r};
    }
    default:
      throw InvalidArgument("not a single-qubit gate");
  }
}

void apply_single(std::span<Complex> state, int qubit, const Block2& m) {
  const std::size_t mask = std::size_t{1} << qubit;
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (i & mask) continue;
    const Complex x = state[i];
    const Complex y = state[i | mask];
    state[i] = m[0] * x + m[1] * y;
    state[i | mask] = m[2] * x + m[3] * y;
  }
}

void apply_gate(std::span<Complex> state, const GateSpec& g, std::span<const double> theta) {
  const double angle = g.param_index ? theta[*g.param_index] : 0.0;
  switch (g.kind) {
    case GateKind::kRX:
    case GateKind::kRY:
    case GateKind::kRZ:
    case GateKind::kH:
      apply_single(state, g.qubits[0], single_qubit_block(g.kind, angle));
      return;
    case GateKind::kCNOT: {
      const std::size_t cm = std::size_t{1} << g.qubits[0];
      const std::size_t tm = std::size_t{1} << g.qubits[1];
      for (std::size_t i = 0; i < state.size(); ++i) {
        if ((i & cm) && !(i & tm)) std::swap(state[i], state[i | tm]);
      }
      return;
    }
    case GateKind::kCZ: {
      const std::size_t both = (std::size_t{1} << g.qubits[0]) | (std::size_t{1} << g.qubits[1]);
      for (std::size_t i = 0; i < state.size(); ++i) {
        if ((i & both) == both) state[i] = -state[i];
      }
      return;
    }
    case GateKind::kSWAP:
    case GateKind::kRSWAP: {
      const std::size_t am = std::size_t{1} << g.qubits[0];
      const std::size_t bm = std::size_t{1} << g.qubits[1];
      const bool partial = g.kind == GateKind::kRSWAP;
      const double c = std::cos(angle / 2.0);
      const Complex mis(0.0, -std::sin(angle / 2.0));
      for (std::size_t i = 0; i < state.size(); ++i) {
        // visit each (a=1, b=0) <-> (a=0, b=1) pair once
        if (!(i & am) || (i & bm)) continue;
        const std::size_t j = (i & ~am) | bm;
        if (!partial) {
          std::swap(state[i], state[j]);
        } else {
          const Complex x = state[i];
          const Complex y = state[j];
          state[i] = c * x + mis * y;
          state[j] = mis * x + c * y;
        }
      }
      if (partial) {
        // on the SWAP-symmetric diagonal states the gate is exp(-i angle / 2)
        const Complex diag(c, -std::sin(angle / 2.0));
        for (std::size_t i = 0; i < state.size(); ++i) {
          if (bool(i & am) == bool(i & bm)) state[i] *= diag;
        }
      }
      return;
    }
  }
}

}  // namespace

bool is_parameterized(GateKind kind) {
  return kind == GateKind::kRX || kind == GateKind::kRY || kind == GateKind::kRZ ||
         kind == GateKind::kRSWAP;
}

int arity(GateKind kind) {
  switch (kind) {
    case GateKind::kRX:
    case GateKind::kRY:
    case GateKind::kRZ:
    case GateKind::kH:
      return 1;
    default:
      return 2;
  }
}

std::string_view gate_name(GateKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "?";
}

GateKind parse_gate_kind(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  throw InvalidArgument("unknown gate kind '" + std::string(name) + "'");
}

ComplexMatrix gate_matrix(GateKind kind, double angle) {
  const int n = arity(kind);
  const int dim = 1 << n;
  ComplexMatrix m(dim, dim);
  // column k is the gate applied to local basis state k
  for (int k = 0; k < dim; ++k) {
    std::vector<Complex> col(dim, 0.0);
    col[k] = 1.0;
    GateSpec g{kind, n == 1 ? std::vector<int>{0} : std::vector<int>{0, 1},
               is_parameterized(kind) ? std::optional<int>(0) : std::nullopt};
    const double theta[1] = {angle};
    apply_gate(col, g, theta);
    for (int r = 0; r < dim; ++r) m(r, k) = col[r];
  }
  return m;
}

CircuitAnsatz::CircuitAnsatz(int num_qubits, std::vector<GateSpec> gates, int num_params,
                             std::string label)
    : num_qubits_(num_qubits),
      gates_(std::move(gates)),
      num_params_(num_params),
      label_(std::move(label)) {
  if (num_qubits_ < 1 || num_qubits_ > kMaxQubits) {
    throw InvalidArgument("circuit width must be in [1, " + std::to_string(kMaxQubits) +
                          "], got " + std::to_string(num_qubits_));
  }
  if (num_params_ < 0) throw InvalidArgument("negative parameter count");
  std::vector<bool> used(static_cast<std::size_t>(num_params_), false);
  for (std::size_t gi = 0; gi < gates_.size(); ++gi) {
    const GateSpec& g = gates_[gi];
    const std::string where = "gate " + std::to_string(gi) + " (" + std::string(gate_name(g.kind)) + ")";
    if (static_cast<int>(g.qubits.size()) != arity(g.kind)) {
      throw InvalidArgument(where + ": expected " + std::to_string(arity(g.kind)) + " qubits");
    }
    for (int q : g.qubits) {
      if (q < 0 || q >= num_qubits_) {
        throw InvalidArgument(where + ": invalid qubit index " + std::to_string(q));
      }
    }
    if (g.qubits.size() == 2 && g.qubits[0] == g.qubits[1]) {
      throw InvalidArgument(where + ": qubit indices must be distinct");
    }
    if (is_parameterized(g.kind) != g.param_index.has_value()) {
      throw InvalidArgument(where + (g.param_index ? ": fixed gate takes no parameter"
                                                   : ": rotation needs a parameter index"));
    }
    if (g.param_index) {
      if (*g.param_index < 0 || *g.param_index >= num_params_) {
        throw InvalidArgument(where + ": parameter index " + std::to_string(*g.param_index) +
                              " out of range");
      }
      used[*g.param_index] = true;
    }
  }
  const auto unused = std::find(used.begin(), used.end(), false);
  if (unused != used.end()) {
    throw InvalidArgument("parameter " + std::to_string(unused - used.begin()) +
                          " drives no gate");
  }
}

namespace {

int infer_params(const std::vector<GateSpec>& gates) {
  int p = 0;
  for (const auto& g : gates) {
    if (g.param_index) p = std::max(p, *g.param_index + 1);
  }
  return p;
}

}  // namespace

CircuitAnsatz::CircuitAnsatz(int num_qubits, std::vector<GateSpec> gates, std::string label)
    : CircuitAnsatz(num_qubits, gates, infer_params(gates), std::move(label)) {}

CircuitAnsatz CircuitAnsatz::with_appended(GateKind kind, std::vector<int> qubits,
                                           std::string label) const {
  std::vector<GateSpec> gates = gates_;
  int params = num_params_;
  std::optional<int> index;
  if (is_parameterized(kind)) index = params++;
  gates.push_back(GateSpec{kind, std::move(qubits), index});
  return CircuitAnsatz(num_qubits_, std::move(gates), params, std::move(label));
}

void simulate_into(const CircuitAnsatz& ansatz, std::span<const double> theta,
                   std::span<Complex> out) {
  if (static_cast<int>(theta.size()) != ansatz.num_params()) {
    throw InvalidArgument("parameter vector has length " + std::to_string(theta.size()) +
                          ", ansatz '" + ansatz.label() + "' takes " +
                          std::to_string(ansatz.num_params()));
  }
  if (static_cast<int>(out.size()) != ansatz.dim()) {
    throw DimensionError("output buffer size does not match register");
  }
  std::fill(out.begin(), out.end(), Complex(0.0));
  out[0] = 1.0;
  for (const auto& g : ansatz.gates()) apply_gate(out, g, theta);
}

StateVector simulate(const CircuitAnsatz& ansatz, std::span<const double> theta) {
  ComplexVector v(ansatz.dim());
  simulate_into(ansatz, theta, std::span<Complex>(v.data(), v.size()));
  return StateVector(std::move(v));
}

CircuitAnsatz builtin_circuit(const std::string& name) {
  using G = GateKind;
  if (name == "paper-circuit-1") {
    return CircuitAnsatz(2,
                         {{G::kRX, {0}, 0},
                          {G::kRX, {1}, 1},
                          {G::kRY, {0}, 2},
                          {G::kRY, {1}, 3},
                          {G::kCNOT, {0, 1}, std::nullopt}},
                         4, name);
  }
  if (name == "paper-circuit-2") {
    return CircuitAnsatz(2,
                         {{G::kRX, {0}, 0},
                          {G::kRX, {1}, 1},
                          {G::kH, {0}, std::nullopt},
                          {G::kH, {1}, std::nullopt},
                          {G::kCZ, {0, 1}, std::nullopt},
                          {G::kRX, {0}, 2},
                          {G::kRX, {1}, 3}},
                         4, name);
  }
  throw InvalidArgument("UnknownCircuit: no builtin circuit named '" + name + "'");
}

void sample_parameters_into(const CircuitAnsatz& ansatz, RandomSource& rng,
                            std::span<double> out) {
  if (static_cast<int>(out.size()) != ansatz.num_params()) {
    throw DimensionError("parameter buffer size does not match ansatz");
  }
  constexpr double kPeriod = 2.0 * std::numbers::pi;
  for (double& v : out) {
    v = rng.uniform(0.0, kPeriod);
    if (v >= kPeriod) v = 0.0;  // rounding at the top of the range
  }
}

ParameterVector sample_parameters(const CircuitAnsatz& ansatz, RandomSource& rng) {
  ParameterVector theta(static_cast<std::size_t>(ansatz.num_params()));
  sample_parameters_into(ansatz, rng, theta);
  return theta;
}

}  // namespace homexpr
