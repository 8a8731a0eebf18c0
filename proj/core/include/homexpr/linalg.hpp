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

// Dense complex linear algebra shared by every other module.
//
// Storage is Eigen, row-major. Two strong types sit on top of the raw
// matrix: UnitaryMatrix (U^dagger U = I checked at construction) and
// StateVector (unit 2-norm checked at construction). Both are immutable.

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace homexpr {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

/// Unitarity / normalization tolerance for freshly built values.
inline constexpr double kUnitaryTol = 1e-10;
/// Tolerance after a product of verified values (accumulated roundoff).
inline constexpr double kProductTol = 1e-9;
/// Largest dimension of a dense UnitaryMatrix.
inline constexpr int kMaxUnitaryDim = 16;
/// Largest StateVector dimension (8 qubits).
inline constexpr int kMaxStateDim = 256;
/// Largest d^t for tensor-power operators.
inline constexpr std::size_t kMaxTensorDim = 4096;

/// Largest entry modulus.
double max_abs(const ComplexMatrix& m);
bool all_finite(const ComplexMatrix& m);
bool all_finite(const ComplexVector& v);

/// Entrywise max of |U^dagger U - I|.
double unitarity_defect(const ComplexMatrix& m);

class UnitaryMatrix {
 public:
  /// Throws NumericError unless `m` is square, finite and unitary to `tol`,
  /// GuardError if the dimension exceeds kMaxUnitaryDim.
  explicit UnitaryMatrix(ComplexMatrix m, double tol = kUnitaryTol);

  static UnitaryMatrix identity(int d);

  int dim() const { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }
  Complex operator()(int r, int c) const { return m_(r, c); }

  UnitaryMatrix adjoint() const;

 private:
  ComplexMatrix m_;
};

/// Product of two unitaries, re-verified at kProductTol.
UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b);

class StateVector {
 public:
  /// Throws NumericError unless `amplitudes` is finite with |norm - 1| <= tol.
  explicit StateVector(ComplexVector amplitudes, double tol = kUnitaryTol);

  /// Computational basis vector e_index.
  static StateVector basis(int dim, int index);

  int dim() const { return static_cast<int>(v_.size()); }
  const ComplexVector& amplitudes() const { return v_; }
  Complex operator[](int i) const { return v_(i); }

 private:
  ComplexVector v_;
};

/// U|psi>, verified at kProductTol.
StateVector apply(const UnitaryMatrix& u, const StateVector& psi);

/// <a|b>. Summed in index order so that inner(a, b) == conj(inner(b, a)) bit for bit.
Complex inner(std::span<const Complex> a, std::span<const Complex> b);
Complex inner(const StateVector& a, const StateVector& b);

/// |<psi|phi>|^2. Throws DimensionError on mismatched dims.
double fidelity(const StateVector& psi, const StateVector& phi);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

/// psi^{(x) t}. Throws GuardError when d^t > kMaxTensorDim.
ComplexVector tensor_power(const ComplexVector& psi, int t);

/// d^t, or GuardError when it exceeds kMaxTensorDim.
std::size_t checked_tensor_dim(int d, int t);

/// Binomial coefficient C(n, k).
std::uint64_t binomial(int n, int k);

/// Operator permuting the t tensor factors of (C^d)^{(x) t}: factor j of the
/// input lands in slot perm[j] of the output.
ComplexMatrix permutation_operator(int d, std::span<const int> perm);

/// Orthogonal projector onto the symmetric subspace of (C^d)^{(x) t}, built as
/// the average of all t! factor permutations. Trace is C(d+t-1, t).
ComplexMatrix symmetric_projector(int d, int t);

/// Largest |eigenvalue| of a Hermitian matrix (its operator 2-norm).
double hermitian_operator_norm(const ComplexMatrix& m);

/// Entrywise max of |M - M^dagger|.
double hermiticity_defect(const ComplexMatrix& m);

}  // namespace homexpr
