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

// Homogeneous-space expressibility of a parameterized ansatz A:
//
//   E^{U/H}_A = E_{psi ~ Haar} [ min_theta min_{h in H} 1 - |<h psi|psi_A(theta)>|^2 ]
//
// estimated by Monte Carlo over M Haar targets. The inner minimum is found by
// random search over N uniform parameter draws followed by an optional
// derivative-free coordinate refinement from the best draw. Smaller is more
// expressive; 0 <= E <= 1 - 1/d^2.
//
// Targets are Haar on the full U(d); their H-orbits are the quotient classes,
// which induces exactly the invariant measure on U(d)/H.
//
// Also here: the fidelity-histogram KL expressibility of Sim et al. (2019),
// used as a baseline.

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "homexpr/circuit.hpp"
#include "homexpr/random.hpp"
#include "homexpr/symmetry.hpp"

namespace homexpr {

/// Refusal threshold for M * |H| * N distance evaluations.
inline constexpr double kMaxEvaluations = 1e9;

struct ExpressibilityConfig {
  std::uint64_t haar_samples = 2000;   // M targets
  std::uint64_t theta_samples = 4000;  // N draws per target
  int refine_iters = 3;
  double refine_shrink = 0.5;
  std::uint64_t seed = 0;
  /// Worker count (0 = hardware). Never changes the result.
  unsigned threads = 1;

  /// Throws InvalidArgument on M or N zero, negative refine_iters or
  /// refine_shrink outside (0, 1).
  void validate() const;
};

struct ExpressibilityReport {
  double estimate = 0.0;
  double std_error = 0.0;
  std::vector<double> per_target_minima;
  ExpressibilityConfig config;
  std::string ansatz;
  std::string group;
  /// Set when H was an epsilon-net, in which case estimate bounds E from above.
  bool upper_bound = false;
};

/// Throws DimensionError when 2^n != dim H, InvalidArgument on a bad config,
/// GuardError when M * |H| * N > kMaxEvaluations.
ExpressibilityReport estimate_expressibility(const CircuitAnsatz& ansatz,
                                             const SymmetryGroup& group,
                                             const ExpressibilityConfig& cfg);
ExpressibilityReport estimate_expressibility(const CircuitAnsatz& ansatz,
                                             const FiniteSymmetrySet& net,
                                             const ExpressibilityConfig& cfg);

/// The H = {I} comparator; identical code path to the trivial-group call.
ExpressibilityReport estimate_expressibility_full(const CircuitAnsatz& ansatz,
                                                  const ExpressibilityConfig& cfg);

/// Minimum distance for a single target orbit, exactly as the estimator
/// computes it for target index `target_index`. Exposed for tests.
double target_minimum(const CircuitAnsatz& ansatz, std::span<const UnitaryMatrix> elements,
                      const ExpressibilityConfig& cfg, std::uint64_t target_index);

/// Coordinate-wise bracketed line search. Pass k scans every coordinate over
/// [theta_c - pi s^k, theta_c + pi s^k] (pass 0 is the full period) with a
/// uniform grid followed by golden-section polishing, and accepts only strict
/// improvements. Coordinates stay wrapped into [0, 2pi). Returns the final
/// objective value; never exceeds objective(theta) on entry.
double coordinate_refine(const std::function<double(std::span<const double>)>& objective,
                         std::span<double> theta, int iters, double shrink);

/// Density of F = |<psi|phi>|^2 for independent Haar states in dimension d:
/// (d-1)(1-F)^{d-2}. Throws InvalidArgument for d < 2 or F outside [0, 1].
double haar_fidelity_pdf(double fidelity, int d);
/// 1 - (1-F)^{d-1}.
double haar_fidelity_cdf(double fidelity, int d);

struct FidelityHistogram {
  int bins = 0;
  std::vector<std::uint64_t> counts;
  std::uint64_t sample_count = 0;

  double bin_lo(int b) const { return static_cast<double>(b) / bins; }
  double bin_hi(int b) const { return static_cast<double>(b + 1) / bins; }
};

struct SimExpressibility {
  double kl = 0.0;
  FidelityHistogram histogram;
};

/// KL(P_hat || P_Haar) between the fidelity histogram of `pairs` independent
/// (theta, theta') draws and the Haar fidelity law integrated per bin.
/// Empty bins contribute 0; Haar bin masses are floored at the smallest
/// normal double so a degenerate ansatz yields a large finite value.
/// Pair k draws from rng.substream(k).
SimExpressibility sim_expressibility_detailed(const CircuitAnsatz& ansatz, std::uint64_t pairs,
                                              int bins, const RandomSource& rng,
                                              unsigned threads = 1);
double sim_expressibility(const CircuitAnsatz& ansatz, std::uint64_t pairs, int bins,
                          const RandomSource& rng);

}  // namespace homexpr
