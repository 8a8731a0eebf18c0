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

#include "homexpr/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include "homexpr/errors.hpp"
#include "homexpr/parallel.hpp"

namespace homexpr {

namespace {

constexpr double kWeightSumTol = 1e-12;
constexpr double kMembershipTol = 1e-6;
constexpr std::uint64_t kMaxBatches = 32;
constexpr int kBootstrapReps = 200;
constexpr std::uint64_t kBootstrapStream = std::numeric_limits<std::uint64_t>::max();

double int_pow(double x, int t) {
  double r = 1.0;
  for (int k = 0; k < t; ++k) r *= x;
  return r;
}

void check_t(int t) {
  if (t < 1) throw InvalidArgument("design order t must be >= 1, got " + std::to_string(t));
}

void check_dim(int a, int b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": dimension mismatch " + std::to_string(a) +
                         " vs " + std::to_string(b));
  }
}

std::span<const Complex> view(const StateVector& s) {
  return {s.amplitudes().data(), static_cast<std::size_t>(s.amplitudes().size())};
}

// Contiguous batch boundaries that depend only on the sample count.
std::vector<std::uint64_t> batch_edges(std::uint64_t samples) {
  const std::uint64_t b = std::min<std::uint64_t>(kMaxBatches, samples);
  std::vector<std::uint64_t> edges(b + 1);
  for (std::uint64_t k = 0; k <= b; ++k) edges[k] = k * samples / b;
  return edges;
}

// Per-batch sums of (|phi(x_s)><phi(x_s)|)^{(x)t}.
std::vector<ComplexMatrix> batch_moment_sums(int d, const SymmetryGroup& group,
                                             const RepresentativePolicy& policy, int t,
                                             std::uint64_t samples, const RandomSource& rng,
                                             unsigned threads,
                                             const std::vector<std::uint64_t>& edges) {
  check_t(t);
  check_dim(d, group.dim(), "quotient_moment_estimate");
  if (samples == 0) throw InvalidArgument("samples must be >= 1");
  const std::size_t n = checked_tensor_dim(d, t);
  const auto shared = std::make_shared<const SymmetryGroup>(group);
  const std::vector<double> freq = policy.mode() == PolicyMode::kEnsembleMatched
                                       ? orbit_membership_frequencies(*policy.payload(), group)
                                       : std::vector<double>{};
  std::vector<ComplexMatrix> sums(edges.size() - 1);
  parallel_for(sums.size(), threads, [&](std::size_t b) {
    ComplexMatrix acc = ComplexMatrix::Zero(n, n);
    for (std::uint64_t s = edges[b]; s < edges[b + 1]; ++s) {
      RandomSource stream = rng.substream(s);
      const StateVector phi = draw_policy_state(d, shared, policy, freq, stream);
      const ComplexVector v = tensor_power(phi.amplitudes(), t);
      acc.noalias() += v * v.adjoint();
    }
    sums[b] = std::move(acc);
  });
  return sums;
}

}  // namespace

StateEnsemble::StateEnsemble(std::vector<StateVector> states, std::vector<double> weights)
    : states_(std::move(states)), weights_(std::move(weights)) {
  if (states_.empty()) throw InvalidArgument("ensemble needs at least one state");
  if (states_.size() != weights_.size()) {
    throw InvalidArgument("ensemble has " + std::to_string(states_.size()) + " states but " +
                          std::to_string(weights_.size()) + " weights");
  }
  const int d = states_.front().dim();
  double sum = 0.0;
  for (std::size_t i = 0; i < states_.size(); ++i) {
    check_dim(states_[i].dim(), d, "StateEnsemble");
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i])) {
      throw InvalidArgument("ensemble weight " + std::to_string(i) + " must be positive");
    }
    sum += weights_[i];
  }
  if (std::abs(sum - 1.0) > kWeightSumTol) {
    throw InvalidArgument("ensemble weights sum to " + std::to_string(sum) + ", not 1");
  }
}

StateEnsemble StateEnsemble::uniform(std::vector<StateVector> states) {
  const std::size_t n = states.size();
  if (n == 0) throw InvalidArgument("ensemble needs at least one state");
  return StateEnsemble(std::move(states), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

RepresentativePolicy RepresentativePolicy::canonical() {
  return RepresentativePolicy(PolicyMode::kCanonical);
}

RepresentativePolicy RepresentativePolicy::uniform_orbit() {
  return RepresentativePolicy(PolicyMode::kUniformOrbit);
}

RepresentativePolicy RepresentativePolicy::ensemble_matched(StateEnsemble payload) {
  return RepresentativePolicy(PolicyMode::kEnsembleMatched, std::move(payload));
}

std::vector<double> orbit_membership_frequencies(const StateEnsemble& ens,
                                                 const SymmetryGroup& group) {
  check_dim(ens.dim(), group.dim(), "orbit_membership_frequencies");
  std::vector<double> freq(group.order(), 0.0);
  std::vector<double> fid(group.order());
  for (std::size_t i = 0; i < ens.size(); ++i) {
    const StateVector& psi = ens.states()[i];
    const StateVector canon = canonical_representative(orbit(psi, group));
    for (std::size_t k = 0; k < group.order(); ++k) fid[k] = fidelity(apply(group[k], canon), psi);
    const double best = *std::max_element(fid.begin(), fid.end());
    const auto ties = std::count_if(fid.begin(), fid.end(),
                                    [&](double f) { return f >= best - kMembershipTol; });
    for (std::size_t k = 0; k < group.order(); ++k) {
      if (fid[k] >= best - kMembershipTol) freq[k] += ens.weights()[i] / static_cast<double>(ties);
    }
  }
  return freq;
}

MomentOperator moment_operator(const StateEnsemble& ens, int t) {
  check_t(t);
  const std::size_t n = checked_tensor_dim(ens.dim(), t);
  ComplexMatrix acc = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i < ens.size(); ++i) {
    const ComplexVector v = tensor_power(ens.states()[i].amplitudes(), t);
    acc.noalias() += ens.weights()[i] * (v * v.adjoint());
  }
  return MomentOperator{t, ens.dim(), std::move(acc)};
}

MomentOperator haar_moment_operator(int d, int t) {
  check_t(t);
  ComplexMatrix p = symmetric_projector(d, t);
  p /= static_cast<double>(binomial(d + t - 1, t));
  return MomentOperator{t, d, std::move(p)};
}

StateVector draw_policy_state(int d, const std::shared_ptr<const SymmetryGroup>& group,
                              const RepresentativePolicy& policy,
                              const std::vector<double>& frequencies, RandomSource& stream) {
  const QuotientSample x = sample_quotient_class(d, group, stream);
  const StateOrbit orb = class_action(x, StateVector::basis(d, 0));
  switch (policy.mode()) {
    case PolicyMode::kCanonical:
      return canonical_representative(orb);
    case PolicyMode::kUniformOrbit:
      return orb.states[stream.below(orb.states.size())];
    case PolicyMode::kEnsembleMatched: {
      if (frequencies.size() != group->order()) {
        throw InvalidArgument("ensemble-matched policy needs one frequency per group element");
      }
      const double u = stream.uniform();
      std::size_t k = 0;
      double cumulative = frequencies[0];
      while (u >= cumulative && k + 1 < frequencies.size()) cumulative += frequencies[++k];
      return apply((*group)[k], canonical_representative(orb));
    }
  }
  throw InvalidArgument("unknown representative policy");
}

MomentOperator quotient_moment_estimate(int d, const SymmetryGroup& group,
                                        const RepresentativePolicy& policy, int t,
                                        std::uint64_t samples, const RandomSource& rng,
                                        unsigned threads) {
  const auto edges = batch_edges(samples);
  const auto sums = batch_moment_sums(d, group, policy, t, samples, rng, threads, edges);
  ComplexMatrix total = sums.front();
  for (std::size_t b = 1; b < sums.size(); ++b) total += sums[b];
  total /= static_cast<double>(samples);
  return MomentOperator{t, d, std::move(total)};
}

DesignCheckResult design_check(const StateEnsemble& ens, const SymmetryGroup& group,
                               const RepresentativePolicy& policy, int t, double epsilon,
                               std::uint64_t samples, const RandomSource& rng, unsigned threads) {
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  check_dim(ens.dim(), group.dim(), "design_check");
  const MomentOperator mu = moment_operator(ens, t);
  const auto edges = batch_edges(samples);
  const auto sums = batch_moment_sums(ens.dim(), group, policy, t, samples, rng, threads, edges);

  ComplexMatrix alpha = sums.front();
  for (std::size_t b = 1; b < sums.size(); ++b) alpha += sums[b];
  alpha /= static_cast<double>(samples);

  DesignCheckResult out;
  out.distance = hermitian_operator_norm(mu.matrix - alpha);

  const std::size_t batches = sums.size();
  if (batches < 2) {
    // ||mu - alpha||_op <= 1 for unit-trace PSD operators
    out.mc_error = 1.0;
  } else {
    RandomSource boot = rng.substream(kBootstrapStream);
    double mean = 0.0;
    double sq = 0.0;
    for (int r = 0; r < kBootstrapReps; ++r) {
      ComplexMatrix acc = ComplexMatrix::Zero(alpha.rows(), alpha.cols());
      std::uint64_t count = 0;
      for (std::size_t k = 0; k < batches; ++k) {
        const std::size_t b = boot.below(batches);
        acc += sums[b];
        count += edges[b + 1] - edges[b];
      }
      acc /= static_cast<double>(count);
      const double dist = hermitian_operator_norm(mu.matrix - acc);
      mean += dist;
      sq += dist * dist;
    }
    mean /= kBootstrapReps;
    const double var = std::max(0.0, sq / kBootstrapReps - mean * mean);
    out.mc_error = std::sqrt(var * kBootstrapReps / (kBootstrapReps - 1));
  }
  out.pass = out.distance + out.mc_error < epsilon;
  return out;
}

double frame_potential(const StateEnsemble& ens, int t) {
  check_t(t);
  const auto& s = ens.states();
  const auto& w = ens.weights();
  double total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    total += w[i] * w[i];
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      total += 2.0 * w[i] * w[j] * int_pow(fidelity(s[i], s[j]), t);
    }
  }
  return total;
}

DiscrepancyEstimate moment_discrepancy(const StateEnsemble& ens, const SymmetryGroup& group,
                                       const RepresentativePolicy& policy, int t,
                                       std::uint64_t samples, const RandomSource& rng,
                                       unsigned threads) {
  check_t(t);
  check_dim(ens.dim(), group.dim(), "moment_discrepancy");
  if (samples == 0) throw InvalidArgument("samples must be >= 1");
  const int d = ens.dim();
  const auto shared = std::make_shared<const SymmetryGroup>(group);
  const std::vector<double> freq = policy.mode() == PolicyMode::kEnsembleMatched
                                       ? orbit_membership_frequencies(*policy.payload(), group)
                                       : std::vector<double>{};

  auto overlap_with_ensemble = [&](const StateVector& x) {
    double h = 0.0;
    for (std::size_t i = 0; i < ens.size(); ++i) {
      h += ens.weights()[i] * int_pow(std::norm(inner(view(x), view(ens.states()[i]))), t);
    }
    return h;
  };

  // g_s = |<a|b>|^{2t} - h(a) - h(b), an unbiased sample of Tr(alpha^2) - 2 Tr(alpha mu)
  std::vector<double> g(samples);
  parallel_for(samples, threads, [&](std::size_t s) {
    RandomSource sa = rng.substream(2 * s);
    RandomSource sb = rng.substream(2 * s + 1);
    const StateVector a = draw_policy_state(d, shared, policy, freq, sa);
    const StateVector b = draw_policy_state(d, shared, policy, freq, sb);
    g[s] = int_pow(std::norm(inner(view(a), view(b))), t) - overlap_with_ensemble(a) -
           overlap_with_ensemble(b);
  });

  double mean = 0.0;
  for (double v : g) mean += v;
  mean /= static_cast<double>(samples);
  double ss = 0.0;
  for (double v : g) ss += (v - mean) * (v - mean);

  DiscrepancyEstimate out;
  out.raw = frame_potential(ens, t) + mean;
  out.std_error = samples > 1 ? std::sqrt(ss / static_cast<double>(samples - 1)) /
                                    std::sqrt(static_cast<double>(samples))
                              : 0.0;
  out.clamped = out.raw < 0.0;
  out.value = std::max(out.raw, 0.0);
  return out;
}

int degree(const Polynomial& poly) {
  int deg = 0;
  for (const auto& m : poly) deg = std::max(deg, static_cast<int>(m.entries.size()));
  return deg;
}

Complex evaluate(const Polynomial& poly, const ComplexMatrix& u) {
  Complex total(0.0, 0.0);
  for (const auto& m : poly) {
    Complex term = m.coeff;
    for (const auto& [r, c] : m.entries) term *= u(r, c);
    total += term;
  }
  return total;
}

double extremal_value(const Polynomial& poly, const UnitaryMatrix& u, const SymmetryGroup& group,
                      Extremum mode) {
  check_dim(u.dim(), group.dim(), "extremal_value");
  double best = mode == Extremum::kMax ? -std::numeric_limits<double>::infinity()
                                       : std::numeric_limits<double>::infinity();
  for (const auto& h : group.elements()) {
    const double v = evaluate(poly, h.matrix() * u.matrix()).real();
    best = mode == Extremum::kMax ? std::max(best, v) : std::min(best, v);
  }
  return best;
}

ExtremalCheckResult extremal_design_check(std::span<const QuotientSample> x,
                                          const SymmetryGroup& group, const Polynomial& poly,
                                          Extremum mode, int t, std::uint64_t samples,
                                          const RandomSource& rng) {
  check_t(t);
  if (x.empty()) throw InvalidArgument("extremal design check needs a non-empty sample set");
  if (samples == 0) throw InvalidArgument("samples must be >= 1");
  if (degree(poly) > t) {
    throw InvalidArgument("polynomial degree " + std::to_string(degree(poly)) +
                          " exceeds declared t = " + std::to_string(t));
  }
  const int d = group.dim();
  for (const auto& m : poly) {
    for (const auto& [r, c] : m.entries) {
      if (r < 0 || r >= d || c < 0 || c >= d) {
        throw InvalidArgument("polynomial entry (" + std::to_string(r) + "," + std::to_string(c) +
                              ") outside a " + std::to_string(d) + "x" + std::to_string(d) +
                              " matrix");
      }
    }
  }

  auto mean_and_se = [](const std::vector<double>& v) {
    double mean = 0.0;
    for (double a : v) mean += a;
    mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double a : v) ss += (a - mean) * (a - mean);
    const double se = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) /
                                         std::sqrt(static_cast<double>(v.size()))
                                   : 0.0;
    return std::pair{mean, se};
  };

  std::vector<double> lhs_vals;
  lhs_vals.reserve(x.size());
  for (const auto& q : x) {
    check_dim(q.representative.dim(), d, "extremal_design_check");
    lhs_vals.push_back(extremal_value(poly, q.representative, group, mode));
  }

  const auto shared = std::make_shared<const SymmetryGroup>(group);
  std::vector<double> rhs_vals(samples);
  for (std::uint64_t s = 0; s < samples; ++s) {
    RandomSource stream = rng.substream(s);
    const QuotientSample q = sample_quotient_class(d, shared, stream);
    rhs_vals[s] = extremal_value(poly, q.representative, group, mode);
  }

  const auto [lhs, lhs_se] = mean_and_se(lhs_vals);
  const auto [rhs, rhs_se] = mean_and_se(rhs_vals);
  return ExtremalCheckResult{lhs, rhs, std::abs(lhs - rhs), std::hypot(lhs_se, rhs_se)};
}

}  // namespace homexpr
