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

// Haar sampling on U(d) and on the homogeneous space U(d)/H.
//
// The invariant measure on U/H is the pushforward of Haar on U through the
// canonical projection pi(U) = UH, so a quotient sample is simply a Haar
// unitary remembered as the coset it lies in. No representative is chosen at
// sampling time; see canonical_representative() for that.

#pragma once

#include <memory>

#include "homexpr/linalg.hpp"
#include "homexpr/random.hpp"
#include "homexpr/symmetry.hpp"

namespace homexpr {

/// A point pi(U) of U(d)/H, stored through the raw Haar draw U.
struct QuotientSample {
  UnitaryMatrix representative;
  std::shared_ptr<const SymmetryGroup> group;
};

/// Haar-random U(d) element: QR of a complex Ginibre matrix with column j of
/// Q multiplied by R_jj / |R_jj| so that the result is exactly Haar.
UnitaryMatrix sample_haar_unitary(int d, RandomSource& rng);

/// Haar-random pure state: a normalized standard complex Gaussian vector
/// (same law as the first column of a Haar unitary).
StateVector sample_haar_state(int d, RandomSource& rng);

/// Draws U ~ Haar(U(d)) and returns pi(U) with U as representative.
/// Throws DimensionError when the group acts on another dimension.
QuotientSample sample_quotient_class(int d, std::shared_ptr<const SymmetryGroup> group,
                                     RandomSource& rng);

}  // namespace homexpr
