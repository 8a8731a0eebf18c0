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

// Finite symmetry groups H <= U(d), state orbits under H, H-equivalence and
// the quotient distance
//
//   D_{U/H}(psi, phi) = min_{h in H} 1 - |<h psi|phi>|^2.
//
// Continuous groups enter only through FiniteSymmetrySet (an epsilon-net with
// no closure requirement); the distance computed against one upper-bounds
// the true quotient distance.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "homexpr/linalg.hpp"

namespace homexpr {

struct QuotientSample;

/// Closure tolerance for group verification.
inline constexpr double kClosureTol = 1e-9;
/// Two elements closer than this (entrywise max) are the same element.
inline constexpr double kDuplicateTol = 1e-6;

/// A verified finite subgroup of U(d). Element 0 is exactly the identity.
class SymmetryGroup {
 public:
  int dim() const { return dim_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<UnitaryMatrix>& elements() const { return elements_; }
  const UnitaryMatrix& operator[](std::size_t i) const { return elements_[i]; }
  const std::string& label() const { return label_; }

  /// Index of the element equal to `u` within `tol`, or order() if absent.
  std::size_t find(const ComplexMatrix& u, double tol = kClosureTol) const;

 private:
  friend SymmetryGroup verify_group(std::vector<UnitaryMatrix>, double, std::string);
  SymmetryGroup(int dim, std::vector<UnitaryMatrix> elements, std::string label)
      : dim_(dim), elements_(std::move(elements)), label_(std::move(label)) {}

  int dim_;
  std::vector<UnitaryMatrix> elements_;
  std::string label_;
};

/// Checks identity, duplicates, inverses and closure (in that order) and
/// returns the group with the identity moved to the front.
/// Throws GroupError naming the offending indices (input order), or
/// DimensionError / InvalidArgument for empty or mixed-dimension input.
SymmetryGroup verify_group(std::vector<UnitaryMatrix> elements, double tol = kClosureTol,
                           std::string label = "custom");

/// The trivial group {I_d}.
SymmetryGroup trivial_group(int d);

/// Exact matrix for a builtin element name: "identity", "swap-2q" (exchange
/// of qubits 0 and 1) or "pauli-x@<q>". `dim` must be 2^n for the qubit ones.
UnitaryMatrix builtin_element(const std::string& name, int dim);

/// Group generated by one builtin element: "identity" gives {I}, the
/// involutions give {I, g}. Labelled with `name`.
SymmetryGroup builtin_group(const std::string& name, int dim);

/// Unitary set with no closure requirement, e.g. an epsilon-net of a
/// continuous group.
class FiniteSymmetrySet {
 public:
  explicit FiniteSymmetrySet(std::vector<UnitaryMatrix> elements, std::string label = "net");

  int dim() const { return dim_; }
  const std::vector<UnitaryMatrix>& elements() const { return elements_; }
  const std::string& label() const { return label_; }

 private:
  int dim_;
  std::vector<UnitaryMatrix> elements_;
  std::string label_;
};

/// The set {h|psi> : h in H}, in group element order.
struct StateOrbit {
  std::vector<StateVector> states;
};

enum class EquivalenceMode { kStrict, kPhaseInsensitive };

StateOrbit orbit(const StateVector& psi, const SymmetryGroup& group);

/// True iff some h has ||psi1 - h psi2|| <= tol (strict) or
/// 1 - |<psi1|h psi2>|^2 <= tol (phase insensitive).
bool h_equivalent(const StateVector& psi1, const StateVector& psi2, const SymmetryGroup& group,
                  EquivalenceMode mode = EquivalenceMode::kPhaseInsensitive, double tol = 1e-9);

/// min over the elements of 1 - |<h classState|target>|^2.
double quotient_distance(const StateVector& class_state, const StateVector& target,
                         std::span<const UnitaryMatrix> elements);
double quotient_distance(const StateVector& class_state, const StateVector& target,
                         const SymmetryGroup& group);
/// Upper bound on the distance for the continuous group the net approximates.
double quotient_distance(const StateVector& class_state, const StateVector& target,
                         const FiniteSymmetrySet& net);

/// Multiplies by the phase that makes the first amplitude of modulus above
/// 1e-9 real and positive.
StateVector phase_normalize(const StateVector& psi);

/// Deterministic orbit representative: phase-normalize every member, then take
/// the lexicographically smallest (re, im) amplitude sequence. Components
/// within 1e-9 compare equal so roundoff cannot reorder members.
StateVector canonical_representative(const StateOrbit& orb);

/// Orbit of U psi for the sample's stored representative U.
StateOrbit class_action(const QuotientSample& x, const StateVector& psi);

/// True when both orbits hold the same states (each member of one matches a
/// member of the other to `tol` in the 2-norm).
bool same_orbit_set(const StateOrbit& a, const StateOrbit& b, double tol = 1e-9);

}  // namespace homexpr
