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

#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace homexpr {

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// A reproducible random stream keyed by (master_seed, stream_index).
///
/// Equal keys give bit-identical sequences on every platform: the engine is
/// mt19937_64 (fully specified by the standard) and the uniform / normal
/// transforms are written out here instead of using the implementation-defined
/// std distributions. Monte-Carlo loops give each work item its own stream
/// (stream index = item index) so results do not depend on worker count.
class RandomSource {
 public:
  RandomSource(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  std::uint64_t stream_index() const noexcept { return stream_index_; }

  /// Independent child stream; deterministic in (this key, index), not in
  /// how much of this stream has been consumed.
  RandomSource substream(std::uint64_t index) const;

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  /// Standard normal (Box-Muller).
  double normal();
  /// Standard complex Gaussian, E|z|^2 = 1.
  std::complex<double> complex_normal();

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace homexpr
