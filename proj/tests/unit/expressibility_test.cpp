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


#include "homexpr/expressibility.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "homexpr/errors.hpp"
#include "homexpr/haar.hpp"
#include "support/oracles.hpp"

namespace homexpr {
namespace {

ExpressibilityConfig small_config(std::uint64_t m, std::uint64_t n, int refine,
                                  std::uint64_t seed = 1) {
  ExpressibilityConfig cfg;
  cfg.haar_samples = m;
  cfg.theta_samples = n;
  cfg.refine_iters = refine;
  cfg.seed = seed;
  return cfg;
}

CircuitAnsatz fixed_zero_state() { return CircuitAnsatz(2, {}, 0, "fixed-00"); }

TEST(Expressibility, FixedStateMatchesMeanHaarInfidelity) {
  // A state that never moves sits at mean infidelity 1 - 1/d from Haar targets.
  const ExpressibilityReport r =
      estimate_expressibility_full(fixed_zero_state(), small_config(10000, 1, 0));
  EXPECT_NEAR(r.estimate, 0.75, 0.01);
  EXPECT_LE(r.estimate, 1.0 - 1.0 / 16.0);
}

TEST(Expressibility, TargetMinimumMatchesBruteForceOracle) {
  // Without refinement the estimator is a plain minimum over draws taken from
  // stream (seed, m): target first, then N parameter vectors.
  const CircuitAnsatz a = builtin_circuit("paper-circuit-2");
  const SymmetryGroup g = builtin_group("swap-2q", 4);
  const ExpressibilityConfig cfg = small_config(5, 64, 0, 9);
  for (std::uint64_t m = 0; m < cfg.haar_samples; ++m) {
    RandomSource rng(cfg.seed, m);
    const StateVector target = sample_haar_state(4, rng);
    double best = 1.0;
    for (std::uint64_t i = 0; i < cfg.theta_samples; ++i) {
      const ParameterVector th = sample_parameters(a, rng);
      const ComplexVector out = oracle::dense_simulate(a, th);
      for (const auto& h : g.elements()) {
        const ComplexVector moved = h.matrix() * target.amplitudes();
        best = std::min(best, 1.0 - std::norm(moved.dot(out)));
      }
    }
    EXPECT_NEAR(target_minimum(a, g.elements(), cfg, m), best, 1e-12);
  }
}

TEST(Expressibility, ReportIsMeanOfMinimaWithStandardError) {
  const ExpressibilityReport r = estimate_expressibility(
      builtin_circuit("paper-circuit-1"), builtin_group("swap-2q", 4), small_config(50, 30, 1));
  ASSERT_EQ(r.per_target_minima.size(), 50u);
  double sum = 0.0, ss = 0.0;
  for (double v : r.per_target_minima) sum += v;
  const double mean = sum / 50;
  for (double v : r.per_target_minima) ss += (v - mean) * (v - mean);
  EXPECT_NEAR(r.estimate, mean, 1e-15);
  EXPECT_NEAR(r.std_error, std::sqrt(ss / 49) / std::sqrt(50.0), 1e-15);
  EXPECT_EQ(r.group, "swap-2q");
  EXPECT_EQ(r.ansatz, "paper-circuit-1");
  EXPECT_FALSE(r.upper_bound);
}

TEST(Expressibility, FullEqualsTrivialGroupBitExactly) {
  const CircuitAnsatz a = builtin_circuit("paper-circuit-1");
  const ExpressibilityConfig cfg = small_config(40, 50, 2, 4);
  const ExpressibilityReport full = estimate_expressibility_full(a, cfg);
  const ExpressibilityReport triv = estimate_expressibility(a, trivial_group(4), cfg);
  EXPECT_EQ(full.per_target_minima, triv.per_target_minima);
  EXPECT_EQ(full.estimate, triv.estimate);
}

TEST(Expressibility, MinimaShrinkWithMoreDraws) {
  const CircuitAnsatz a = builtin_circuit("paper-circuit-2");
  const SymmetryGroup g = builtin_group("swap-2q", 4);
  const auto coarse = estimate_expressibility(a, g, small_config(30, 50, 0)).per_target_minima;
  const auto fine = estimate_expressibility(a, g, small_config(30, 400, 0)).per_target_minima;
  for (std::size_t i = 0; i < coarse.size(); ++i) EXPECT_LE(fine[i], coarse[i]);
}

TEST(Expressibility, MinimaShrinkWithMoreRefinement) {
  const CircuitAnsatz a = builtin_circuit("paper-circuit-1");
  const SymmetryGroup g = trivial_group(4);
  std::vector<double> previous;
  for (int iters : {0, 1, 2, 4}) {
    const auto cur = estimate_expressibility(a, g, small_config(30, 40, iters)).per_target_minima;
    if (!previous.empty()) {
      for (std::size_t i = 0; i < cur.size(); ++i) EXPECT_LE(cur[i], previous[i]);
    }
    previous = cur;
  }
}

TEST(Expressibility, SwapQuotientNeverExceedsFullPerTarget) {
  // Same targets and draws; the quotient minimum ranges over a superset.
  const CircuitAnsatz a = builtin_circuit("paper-circuit-1");
  const ExpressibilityConfig cfg = small_config(40, 100, 0, 12);
  const auto q = estimate_expressibility(a, builtin_group("swap-2q", 4), cfg).per_target_minima;
  const auto f = estimate_expressibility_full(a, cfg).per_target_minima;
  for (std::size_t i = 0; i < q.size(); ++i) EXPECT_LE(q[i], f[i]);
}

TEST(Expressibility, EstimatesRespectBound) {
  for (const char* name : {"paper-circuit-1", "paper-circuit-2"}) {
    const ExpressibilityReport r = estimate_expressibility(
        builtin_circuit(name), builtin_group("swap-2q", 4), small_config(100, 50, 1));
    EXPECT_GE(r.estimate, 0.0);
    EXPECT_LE(r.estimate, 1.0 - 1.0 / 16.0 + 3.0 * r.std_error);
    for (double v : r.per_target_minima) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(Expressibility, ThreadCountDoesNotChangeResult) {
  const CircuitAnsatz a = builtin_circuit("paper-circuit-2");
  ExpressibilityConfig cfg = small_config(64, 40, 2, 5);
  const auto one = estimate_expressibility(a, builtin_group("swap-2q", 4), cfg);
  cfg.threads = 4;
  const auto four = estimate_expressibility(a, builtin_group("swap-2q", 4), cfg);
  EXPECT_EQ(one.per_target_minima, four.per_target_minima);
  EXPECT_EQ(one.estimate, four.estimate);
  EXPECT_EQ(one.std_error, four.std_error);
}

TEST(Expressibility, NetEstimateIsFlaggedAsUpperBound) {
  const FiniteSymmetrySet net({UnitaryMatrix::identity(4)}, "net-1");
  const auto r = estimate_expressibility(builtin_circuit("paper-circuit-1"), net,
                                         small_config(10, 10, 0));
  EXPECT_TRUE(r.upper_bound);
  EXPECT_EQ(r.group, "net-1");
}

TEST(Expressibility, ConfigAndGuardErrors) {
  const CircuitAnsatz a = builtin_circuit("paper-circuit-1");
  const SymmetryGroup g = builtin_group("swap-2q", 4);
  EXPECT_THROW(estimate_expressibility(a, g, small_config(0, 10, 0)), InvalidArgument);
  EXPECT_THROW(estimate_expressibility(a, g, small_config(10, 0, 0)), InvalidArgument);
  EXPECT_THROW(estimate_expressibility(a, g, small_config(10, 10, -1)), InvalidArgument);
  ExpressibilityConfig bad_shrink = small_config(10, 10, 1);
  bad_shrink.refine_shrink = 1.0;
  EXPECT_THROW(estimate_expressibility(a, g, bad_shrink), InvalidArgument);
  // 1e5 * 2 * 1e4 = 2e9 evaluations.
  EXPECT_THROW(estimate_expressibility(a, g, small_config(100000, 10000, 0)), GuardError);
  EXPECT_THROW(estimate_expressibility(a, trivial_group(2), small_config(10, 10, 0)),
               DimensionError);
}

TEST(CoordinateRefine, FindsPeriodicMinimum) {
  const double a0 = 1.3, a1 = 5.9;
  auto objective = [&](std::span<const double> t) {
    return 2.0 - std::cos(t[0] - a0) - std::cos(t[1] - a1);
  };
  std::vector<double> theta{0.9, 5.0};
  const double start = objective(theta);
  const double v = coordinate_refine(objective, theta, 4, 0.5);
  EXPECT_LE(v, start);
  EXPECT_NEAR(v, 0.0, 1e-10);
  EXPECT_NEAR(objective(theta), v, 1e-15);
  for (double x : theta) {
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 2 * std::numbers::pi);
  }
}

TEST(CoordinateRefine, NeverWorsens) {
  RandomSource rng(3, 0);
  auto bumpy = [](std::span<const double> t) {
    return std::sin(3 * t[0]) * std::cos(5 * t[1]) + 0.1 * std::sin(t[2]);
  };
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> theta{rng.uniform(0, 6), rng.uniform(0, 6), rng.uniform(0, 6)};
    const double start = bumpy(theta);
    EXPECT_LE(coordinate_refine(bumpy, theta, 2, 0.5), start);
  }
}

double kl_from_counts(const FidelityHistogram& h, int d) {
  double kl = 0.0;
  const double n = static_cast<double>(h.sample_count);
  for (int b = 0; b < h.bins; ++b) {
    if (h.counts[b] == 0) continue;
    const double lo = double(b) / h.bins, hi = double(b + 1) / h.bins;
    const double q = std::max(std::pow(1 - lo, d - 1) - std::pow(1 - hi, d - 1),
                              std::numeric_limits<double>::min());
    const double p = h.counts[b] / n;
    kl += p * std::log(p / q);
  }
  return kl;
}

TEST(SimExpressibility, KlAgreesWithHistogram) {
  const CircuitAnsatz a = builtin_circuit("paper-circuit-1");
  const SimExpressibility s = sim_expressibility_detailed(a, 2000, 75, RandomSource(3, 0));
  std::uint64_t total = 0;
  for (auto c : s.histogram.counts) total += c;
  EXPECT_EQ(total, 2000u);
  EXPECT_NEAR(s.kl, kl_from_counts(s.histogram, 4), 1e-12);
}

TEST(SimExpressibility, FixedStateDivergesToLargeSurrogate) {
  EXPECT_GT(sim_expressibility(fixed_zero_state(), 500, 75, RandomSource(4, 0)), 5.0);
}

TEST(SimExpressibility, HaarLikeEnsembleIsNearZero) {
  // A universal two-qubit layer stack gets close to Haar.
  using G = GateKind;
  std::vector<GateSpec> gates;
  int p = 0;
  for (int layer = 0; layer < 6; ++layer) {
    for (int q = 0; q < 2; ++q) {
      gates.push_back({G::kRZ, {q}, p++});
      gates.push_back({G::kRY, {q}, p++});
      gates.push_back({G::kRZ, {q}, p++});
    }
    gates.push_back({G::kCNOT, {0, 1}, std::nullopt});
  }
  const CircuitAnsatz a(2, gates, p, "deep");
  EXPECT_LT(sim_expressibility(a, 5000, 50, RandomSource(5, 0)), 0.05);
}

TEST(SimExpressibility, DeterministicAcrossThreads) {
  const CircuitAnsatz a = builtin_circuit("paper-circuit-2");
  const auto one = sim_expressibility_detailed(a, 1000, 75, RandomSource(6, 0), 1);
  const auto three = sim_expressibility_detailed(a, 1000, 75, RandomSource(6, 0), 3);
  EXPECT_EQ(one.histogram.counts, three.histogram.counts);
  EXPECT_EQ(one.kl, three.kl);
}

TEST(SimExpressibility, RejectsBadBudgets) {
  const CircuitAnsatz a = builtin_circuit("paper-circuit-1");
  EXPECT_THROW(sim_expressibility(a, 100, 1, RandomSource(0, 0)), InvalidArgument);
  EXPECT_THROW(sim_expressibility(a, 0, 75, RandomSource(0, 0)), InvalidArgument);
}

}  // namespace
}  // namespace homexpr
