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

#include "homexpr/haar.hpp"

#include <cmath>
#include <string>

#include "homexpr/errors.hpp"

namespace homexpr {

UnitaryMatrix sample_haar_unitary(int d, RandomSource& rng) {
  if (d < 1) throw InvalidArgument("Haar dimension must be >= 1, got " + std::to_string(d));
  if (d > kMaxUnitaryDim) {
    throw GuardError("Haar dimension " + std::to_string(d) + " exceeds limit " +
                     std::to_string(kMaxUnitaryDim));
  }
  Eigen::MatrixXcd z(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) z(r, c) = rng.complex_normal();
  }
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd& packed = qr.matrixQR();
  for (int j = 0; j < d; ++j) {
    const Complex rjj = packed(j, j);
    const double mod = std::abs(rjj);
    // A zero pivot has probability zero; leave the column as is.
    if (mod > 0.0) q.col(j) *= rjj / mod;
  }
  return UnitaryMatrix(ComplexMatrix(q));
}

StateVector sample_haar_state(int d, RandomSource& rng) {
  if (d < 1) throw InvalidArgument("Haar dimension must be >= 1, got " + std::to_string(d));
  ComplexVector v(d);
  double norm = 0.0;
  do {
    for (int i = 0; i < d; ++i) v(i) = rng.complex_normal();
    norm = v.norm();
  } while (norm == 0.0);
  return StateVector(v / norm);
}

QuotientSample sample_quotient_class(int d, std::shared_ptr<const SymmetryGroup> group,
                                     RandomSource& rng) {
  if (!group) throw InvalidArgument("sample_quotient_class needs a symmetry group");
  if (group->dim() != d) {
    throw DimensionError("quotient sampling: group acts on dim " + std::to_string(group->dim()) +
                         ", requested dim " + std::to_string(d));
  }
  return QuotientSample{sample_haar_unitary(d, rng), std::move(group)};
}

}  // namespace homexpr
