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

// Homogeneous-space state designs.
//
// A weighted ensemble {(p_i, psi_i)} is a U/H state t-design under a
// representative map phi when
//
//   mu = sum_i p_i (|psi_i><psi_i|)^{(x)t}  equals
//   alpha = Int_{U/H} (phi(x))^{(x)t} dx.
//
// Schur's lemma gives alpha in closed form only for H = {I}, so alpha is
// estimated by Monte Carlo over quotient samples. The ensemble side is exact.
// Design distance uses the operator 2-norm; the Hilbert-Schmidt discrepancy
// Tr[(alpha - mu)^2] is estimated without forming d^t matrices through
// Tr[(|a><a|)^{(x)t} (|b><b|)^{(x)t}] = |<a|b>|^{2t}.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "homexpr/haar.hpp"
#include "homexpr/linalg.hpp"
#include "homexpr/random.hpp"
#include "homexpr/symmetry.hpp"

namespace homexpr {

class StateEnsemble {
 public:
  /// Weights must be positive, one per state, summing to 1 within 1e-12.
  StateEnsemble(std::vector<StateVector> states, std::vector<double> weights);
  static StateEnsemble uniform(std::vector<StateVector> states);

  int dim() const { return states_.front().dim(); }
  std::size_t size() const { return states_.size(); }
  const std::vector<StateVector>& states() const { return states_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<StateVector> states_;
  std::vector<double> weights_;
};

enum class PolicyMode { kCanonical, kUniformOrbit, kEnsembleMatched };

/// The representative map phi applied to each quotient sample x = pi(U):
///  - canonical: canonical_representative of the orbit of U|0>;
///  - uniform_orbit: h U|0> with h uniform over H;
///  - ensemble_matched: h_k c(x) where c(x) is the canonical representative
///    and k is drawn with the frequency at which the ensemble's own states sit
///    at group position k relative to their canonical representative.
class RepresentativePolicy {
 public:
  static RepresentativePolicy canonical();
  static RepresentativePolicy uniform_orbit();
  static RepresentativePolicy ensemble_matched(StateEnsemble payload);

  PolicyMode mode() const { return mode_; }
  const std::optional<StateEnsemble>& payload() const { return payload_; }

 private:
  explicit RepresentativePolicy(PolicyMode mode, std::optional<StateEnsemble> payload = {})
      : mode_(mode), payload_(std::move(payload)) {}

  PolicyMode mode_;
  std::optional<StateEnsemble> payload_;
};

/// Weight of each group position k among the ensemble's states: state i is
/// assigned to every k with fidelity(h_k c_i, psi_i) within 1e-6 of the best,
/// its weight split evenly. Sums to 1.
std::vector<double> orbit_membership_frequencies(const StateEnsemble& ens,
                                                 const SymmetryGroup& group);

struct MomentOperator {
  int t = 0;
  int d = 0;
  ComplexMatrix matrix;  // d^t x d^t
};

/// sum_i p_i (|psi_i><psi_i|)^{(x)t}. GuardError when d^t > kMaxTensorDim.
MomentOperator moment_operator(const StateEnsemble& ens, int t);

/// Haar t-th moment: symmetric projector / C(d+t-1, t).
MomentOperator haar_moment_operator(int d, int t);

/// phi(x) for one quotient draw from `stream`: samples x = pi(U) and then
/// applies the policy, drawing any policy randomness from the same stream.
StateVector draw_policy_state(int d, const std::shared_ptr<const SymmetryGroup>& group,
                              const RepresentativePolicy& policy,
                              const std::vector<double>& frequencies, RandomSource& stream);

/// Monte-Carlo estimate of Int_{U/H} phi(x)^{(x)t} dx; sample s draws from
/// rng.substream(s).
MomentOperator quotient_moment_estimate(int d, const SymmetryGroup& group,
                                        const RepresentativePolicy& policy, int t,
                                        std::uint64_t samples, const RandomSource& rng,
                                        unsigned threads = 1);

struct DesignCheckResult {
  double distance = 0.0;
  double mc_error = 0.0;
  bool pass = false;
};

/// distance = ||mu - alpha_hat||_op; mc_error is the bootstrap standard
/// deviation of that distance over 32 sample batches; pass iff
/// distance + mc_error < epsilon.
DesignCheckResult design_check(const StateEnsemble& ens, const SymmetryGroup& group,
                               const RepresentativePolicy& policy, int t, double epsilon,
                               std::uint64_t samples, const RandomSource& rng,
                               unsigned threads = 1);

/// sum_{i,j} p_i p_j |<psi_i|psi_j>|^{2t}.
double frame_potential(const StateEnsemble& ens, int t);

struct DiscrepancyEstimate {
  /// max(raw, 0).
  double value = 0.0;
  /// Unclamped estimator.
  double raw = 0.0;
  double std_error = 0.0;
  bool clamped = false;
};

/// Tr[(alpha - mu)^2] = Tr(alpha^2) + Tr(mu^2) - 2 Tr(alpha mu) with
/// Tr(mu^2) = frame_potential exactly and the alpha terms from `samples`
/// independent pairs (a_s, b_s) of policy states drawn from substreams 2s and
/// 2s+1. Negative estimates are clamped to 0 and flagged.
DiscrepancyEstimate moment_discrepancy(const StateEnsemble& ens, const SymmetryGroup& group,
                                       const RepresentativePolicy& policy, int t,
                                       std::uint64_t samples, const RandomSource& rng,
                                       unsigned threads = 1);

/// coeff * prod U(row, col) over `entries`.
struct Monomial {
  Complex coeff{1.0, 0.0};
  std::vector<std::pair<int, int>> entries;
};
using Polynomial = std::vector<Monomial>;

int degree(const Polynomial& poly);
Complex evaluate(const Polynomial& poly, const ComplexMatrix& u);

enum class Extremum { kMin, kMax };

/// f(x) = extremum over h in H of Re g(h U_x).
double extremal_value(const Polynomial& poly, const UnitaryMatrix& u, const SymmetryGroup& group,
                      Extremum mode);

struct ExtremalCheckResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  /// Combined standard error of lhs and rhs.
  double mc_error = 0.0;
};

/// lhs = mean of f over X, rhs = Monte-Carlo mean of f over `samples`
/// quotient-Haar draws (sample s from rng.substream(s)).
/// Throws InvalidArgument for an empty X, degree(poly) > t or out-of-range
/// entries.
ExtremalCheckResult extremal_design_check(std::span<const QuotientSample> x,
                                          const SymmetryGroup& group, const Polynomial& poly,
                                          Extremum mode, int t, std::uint64_t samples,
                                          const RandomSource& rng);

}  // namespace homexpr
