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

#include "homexpr/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "homexpr/errors.hpp"
#include "homexpr/haar.hpp"

namespace homexpr {

namespace {

constexpr double kPhaseAnchorTol = 1e-9;
constexpr double kLexTol = 1e-9;

void check_dims(int a, int b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": dimension mismatch " + std::to_string(a) +
                         " vs " + std::to_string(b));
  }
}

int qubit_count(int dim) {
  int n = 0;
  while ((1 << n) < dim) ++n;
  if ((1 << n) != dim) {
    throw InvalidArgument("dimension " + std::to_string(dim) + " is not a power of two");
  }
  return n;
}

}  // namespace

std::size_t SymmetryGroup::find(const ComplexMatrix& u, double tol) const {
  for (std::size_t k = 0; k < elements_.size(); ++k) {
    if (max_abs(elements_[k].matrix() - u) <= tol) return k;
  }
  return elements_.size();
}

SymmetryGroup verify_group(std::vector<UnitaryMatrix> elements, double tol, std::string label) {
  if (elements.empty()) throw InvalidArgument("symmetry group needs at least one element");
  const int d = elements.front().dim();
  for (const auto& e : elements) check_dims(e.dim(), d, "verify_group");

  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  std::size_t id_index = elements.size();
  for (std::size_t k = 0; k < elements.size(); ++k) {
    if (max_abs(elements[k].matrix() - id) <= tol) {
      id_index = k;
      break;
    }
  }
  if (id_index == elements.size()) {
    throw GroupError(GroupError::Kind::kMissingIdentity, 0, 0,
                     "MissingIdentity: no element equals I_" + std::to_string(d));
  }

  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t j = i + 1; j < elements.size(); ++j) {
      if (max_abs(elements[i].matrix() - elements[j].matrix()) <= kDuplicateTol) {
        throw GroupError(GroupError::Kind::kDuplicateElements, i, j,
                         "DuplicateElements: elements " + std::to_string(i) + " and " +
                             std::to_string(j) + " coincide");
      }
    }
  }

  auto contains = [&](const ComplexMatrix& m) {
    return std::any_of(elements.begin(), elements.end(),
                       [&](const UnitaryMatrix& e) { return max_abs(e.matrix() - m) <= tol; });
  };

  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (!contains(elements[i].matrix().adjoint())) {
      throw GroupError(GroupError::Kind::kMissingInverse, i, i,
                       "MissingInverse: inverse of element " + std::to_string(i) + " is absent");
    }
  }

  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t j = 0; j < elements.size(); ++j) {
      if (!contains(elements[i].matrix() * elements[j].matrix())) {
        throw GroupError(GroupError::Kind::kNotClosed, i, j,
                         "NotClosed: product of elements " + std::to_string(i) + " and " +
                             std::to_string(j) + " is absent");
      }
    }
  }

  std::vector<UnitaryMatrix> ordered;
  ordered.reserve(elements.size());
  ordered.push_back(UnitaryMatrix::identity(d));
  for (std::size_t k = 0; k < elements.size(); ++k) {
    if (k != id_index) ordered.push_back(std::move(elements[k]));
  }
  return SymmetryGroup(d, std::move(ordered), std::move(label));
}

SymmetryGroup trivial_group(int d) {
  return verify_group({UnitaryMatrix::identity(d)}, kClosureTol, "identity");
}

UnitaryMatrix builtin_element(const std::string& name, int dim) {
  if (dim <= 0) throw InvalidArgument("builtin element needs a positive dimension");
  if (name == "identity") return UnitaryMatrix::identity(dim);
  if (name == "swap-2q") {
    const int n = qubit_count(dim);
    if (n < 2) throw InvalidArgument("swap-2q needs at least two qubits, dim " + std::to_string(dim));
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    for (int b = 0; b < dim; ++b) {
      const int b0 = b & 1;
      const int b1 = (b >> 1) & 1;
      const int swapped = (b & ~3) | (b0 << 1) | b1;
      m(swapped, b) = 1.0;
    }
    return UnitaryMatrix(std::move(m));
  }
  const std::string prefix = "pauli-x@";
  if (name.rfind(prefix, 0) == 0) {
    const int n = qubit_count(dim);
    int q = -1;
    try {
      std::size_t used = 0;
      q = std::stoi(name.substr(prefix.size()), &used);
      if (used != name.size() - prefix.size()) q = -1;
    } catch (const std::exception&) {
      q = -1;
    }
    if (q < 0 || q >= n) {
      throw InvalidArgument("bad qubit in builtin element '" + name + "' for " +
                            std::to_string(n) + " qubits");
    }
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    for (int b = 0; b < dim; ++b) m(b ^ (1 << q), b) = 1.0;
    return UnitaryMatrix(std::move(m));
  }
  throw InvalidArgument("unknown builtin group element '" + name + "'");
}

SymmetryGroup builtin_group(const std::string& name, int dim) {
  if (name == "identity") {
    return verify_group({UnitaryMatrix::identity(dim)}, kClosureTol, name);
  }
  return verify_group({UnitaryMatrix::identity(dim), builtin_element(name, dim)}, kClosureTol,
                      name);
}

FiniteSymmetrySet::FiniteSymmetrySet(std::vector<UnitaryMatrix> elements, std::string label)
    : dim_(0), elements_(std::move(elements)), label_(std::move(label)) {
  if (elements_.empty()) throw InvalidArgument("symmetry set needs at least one element");
  dim_ = elements_.front().dim();
  for (const auto& e : elements_) check_dims(e.dim(), dim_, "FiniteSymmetrySet");
}

StateOrbit orbit(const StateVector& psi, const SymmetryGroup& group) {
  check_dims(psi.dim(), group.dim(), "orbit");
  StateOrbit out;
  out.states.reserve(group.order());
  for (const auto& h : group.elements()) out.states.push_back(apply(h, psi));
  return out;
}

bool h_equivalent(const StateVector& psi1, const StateVector& psi2, const SymmetryGroup& group,
                  EquivalenceMode mode, double tol) {
  check_dims(psi1.dim(), psi2.dim(), "h_equivalent");
  check_dims(psi1.dim(), group.dim(), "h_equivalent");
  for (const auto& h : group.elements()) {
    const StateVector moved = apply(h, psi2);
    if (mode == EquivalenceMode::kStrict) {
      if ((psi1.amplitudes() - moved.amplitudes()).norm() <= tol) return true;
    } else if (1.0 - fidelity(psi1, moved) <= tol) {
      return true;
    }
  }
  return false;
}

double quotient_distance(const StateVector& class_state, const StateVector& target,
                         std::span<const UnitaryMatrix> elements) {
  check_dims(class_state.dim(), target.dim(), "quotient_distance");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& h : elements) {
    check_dims(h.dim(), class_state.dim(), "quotient_distance");
    best = std::min(best, 1.0 - fidelity(apply(h, class_state), target));
  }
  return std::clamp(best, 0.0, 1.0);
}

double quotient_distance(const StateVector& class_state, const StateVector& target,
                         const SymmetryGroup& group) {
  return quotient_distance(class_state, target, std::span<const UnitaryMatrix>(group.elements()));
}

double quotient_distance(const StateVector& class_state, const StateVector& target,
                         const FiniteSymmetrySet& net) {
  return quotient_distance(class_state, target, std::span<const UnitaryMatrix>(net.elements()));
}

StateVector phase_normalize(const StateVector& psi) {
  const ComplexVector& v = psi.amplitudes();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mod = std::abs(v(i));
    if (mod > kPhaseAnchorTol) {
      ComplexVector out = v * (std::conj(v(i)) / mod);
      out(i) = Complex(out(i).real(), 0.0);
      return StateVector(std::move(out), kProductTol);
    }
  }
  return psi;
}

namespace {

// -1, 0, +1 comparing (re, im) sequences with a tolerance per component.
int lex_compare(const ComplexVector& a, const ComplexVector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double parts_a[2] = {a(i).real(), a(i).imag()};
    const double parts_b[2] = {b(i).real(), b(i).imag()};
    for (int k = 0; k < 2; ++k) {
      if (parts_a[k] < parts_b[k] - kLexTol) return -1;
      if (parts_a[k] > parts_b[k] + kLexTol) return 1;
    }
  }
  return 0;
}

}  // namespace

StateVector canonical_representative(const StateOrbit& orb) {
  if (orb.states.empty()) throw InvalidArgument("canonical_representative of an empty orbit");
  StateVector best = phase_normalize(orb.states.front());
  for (std::size_t k = 1; k < orb.states.size(); ++k) {
    StateVector candidate = phase_normalize(orb.states[k]);
    if (lex_compare(candidate.amplitudes(), best.amplitudes()) < 0) best = std::move(candidate);
  }
  return best;
}

StateOrbit class_action(const QuotientSample& x, const StateVector& psi) {
  check_dims(x.representative.dim(), psi.dim(), "class_action");
  return orbit(apply(x.representative, psi), *x.group);
}

bool same_orbit_set(const StateOrbit& a, const StateOrbit& b, double tol) {
  auto covered = [tol](const StateOrbit& from, const StateOrbit& in) {
    return std::all_of(from.states.begin(), from.states.end(), [&](const StateVector& s) {
      return std::any_of(in.states.begin(), in.states.end(), [&](const StateVector& r) {
        return r.dim() == s.dim() && (r.amplitudes() - s.amplitudes()).norm() <= tol;
      });
    });
  };
  return covered(a, b) && covered(b, a);
}

}  // namespace homexpr
