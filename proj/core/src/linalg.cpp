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

#include "homexpr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "homexpr/errors.hpp"

namespace homexpr {

double max_abs(const ComplexMatrix& m) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < m.size(); ++i) best = std::max(best, std::abs(m.data()[i]));
  return best;
}

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

bool all_finite(const ComplexVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v(i).real()) || !std::isfinite(v(i).imag())) return false;
  }
  return true;
}

double unitarity_defect(const ComplexMatrix& m) {
  const ComplexMatrix g = m.adjoint() * m;
  return max_abs(g - ComplexMatrix::Identity(m.rows(), m.cols()));
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m, double tol) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) {
    throw NumericError("unitary matrix must be square and non-empty, got " +
                       std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()));
  }
  if (m_.rows() > kMaxUnitaryDim) {
    throw GuardError("unitary dimension " + std::to_string(m_.rows()) + " exceeds limit " +
                     std::to_string(kMaxUnitaryDim));
  }
  if (!all_finite(m_)) throw NumericError("unitary matrix has non-finite entries");
  const double defect = unitarity_defect(m_);
  if (!(defect <= tol)) {
    throw NumericError("matrix is not unitary: max|U^dag U - I| = " + std::to_string(defect));
  }
}

UnitaryMatrix UnitaryMatrix::identity(int d) {
  return UnitaryMatrix(ComplexMatrix::Identity(d, d));
}

UnitaryMatrix UnitaryMatrix::adjoint() const {
  return UnitaryMatrix(m_.adjoint(), kProductTol);
}

UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("unitary product of dims " + std::to_string(a.dim()) + " and " +
                         std::to_string(b.dim()));
  }
  return UnitaryMatrix(a.matrix() * b.matrix(), kProductTol);
}

StateVector::StateVector(ComplexVector amplitudes, double tol) : v_(std::move(amplitudes)) {
  if (v_.size() == 0) throw NumericError("state vector must be non-empty");
  if (v_.size() > kMaxStateDim) {
    throw GuardError("state dimension " + std::to_string(v_.size()) + " exceeds limit " +
                     std::to_string(kMaxStateDim));
  }
  if (!all_finite(v_)) throw NumericError("state vector has non-finite amplitudes");
  const double norm = v_.norm();
  if (!(std::abs(norm - 1.0) <= tol)) {
    throw NumericError("state vector is not normalized: norm = " + std::to_string(norm));
  }
}

StateVector StateVector::basis(int dim, int index) {
  if (dim <= 0 || index < 0 || index >= dim) {
    throw InvalidArgument("basis index " + std::to_string(index) + " out of range for dim " +
                          std::to_string(dim));
  }
  ComplexVector v = ComplexVector::Zero(dim);
  v(index) = 1.0;
  return StateVector(std::move(v));
}

StateVector apply(const UnitaryMatrix& u, const StateVector& psi) {
  if (u.dim() != psi.dim()) {
    throw DimensionError("cannot apply dim " + std::to_string(u.dim()) + " unitary to dim " +
                         std::to_string(psi.dim()) + " state");
  }
  return StateVector(u.matrix() * psi.amplitudes(), kProductTol);
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) {
    throw DimensionError("inner product of dims " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()));
  }
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

Complex inner(const StateVector& a, const StateVector& b) {
  return inner(std::span<const Complex>(a.amplitudes().data(), a.amplitudes().size()),
               std::span<const Complex>(b.amplitudes().data(), b.amplitudes().size()));
}

double fidelity(const StateVector& psi, const StateVector& phi) {
  return std::norm(inner(psi, phi));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

std::size_t checked_tensor_dim(int d, int t) {
  if (d <= 0 || t <= 0) {
    throw InvalidArgument("tensor power needs d >= 1 and t >= 1, got d=" + std::to_string(d) +
                          " t=" + std::to_string(t));
  }
  std::size_t n = 1;
  for (int k = 0; k < t; ++k) {
    n *= static_cast<std::size_t>(d);
    if (n > kMaxTensorDim) {
      throw GuardError("d^t = " + std::to_string(d) + "^" + std::to_string(t) +
                       " exceeds dense limit " + std::to_string(kMaxTensorDim));
    }
  }
  return n;
}

ComplexVector tensor_power(const ComplexVector& psi, int t) {
  checked_tensor_dim(static_cast<int>(psi.size()), t);
  ComplexVector out = psi;
  for (int k = 1; k < t; ++k) out = kron(out, psi);
  return out;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

ComplexMatrix permutation_operator(int d, std::span<const int> perm) {
  const int t = static_cast<int>(perm.size());
  const std::size_t n = checked_tensor_dim(d, t);
  std::vector<int> digits(t);
  std::vector<int> moved(t);
  ComplexMatrix p = ComplexMatrix::Zero(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    // factor 0 is the most significant digit, matching kron ordering
    std::size_t rest = col;
    for (int j = t - 1; j >= 0; --j) {
      digits[j] = static_cast<int>(rest % d);
      rest /= d;
    }
    for (int j = 0; j < t; ++j) moved[perm[j]] = digits[j];
    std::size_t row = 0;
    for (int j = 0; j < t; ++j) row = row * d + moved[j];
    p(row, col) = 1.0;
  }
  return p;
}

ComplexMatrix symmetric_projector(int d, int t) {
  const std::size_t n = checked_tensor_dim(d, t);
  std::vector<int> perm(t);
  std::iota(perm.begin(), perm.end(), 0);
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  std::uint64_t count = 0;
  do {
    sum += permutation_operator(d, perm);
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum / static_cast<double>(count);
}

double hermitian_operator_norm(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("operator norm needs a square matrix");
  if (m.rows() == 0) return 0.0;
  const Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return std::max(std::abs(ev.minCoeff()), std::abs(ev.maxCoeff()));
}

double hermiticity_defect(const ComplexMatrix& m) {
  return max_abs(m - m.adjoint());
}

}  // namespace homexpr
