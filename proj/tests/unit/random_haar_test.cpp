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


#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

#include "homexpr/errors.hpp"
#include "homexpr/expressibility.hpp"
#include "homexpr/haar.hpp"
#include "homexpr/random.hpp"
#include "homexpr/stats.hpp"
#include "homexpr/symmetry.hpp"
#include "support/oracles.hpp"

namespace homexpr {
namespace {

constexpr int kSamples = 100000;

TEST(RandomSource, SameSeedAndStreamRepeat) {
  RandomSource a(42, 3), b(42, 3);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(RandomSource, StreamsAndSeedsDiffer) {
  RandomSource a(42, 3), b(42, 4), c(43, 3);
  EXPECT_NE(a.next_u64(), b.next_u64());
  EXPECT_NE(RandomSource(42, 3).next_u64(), c.next_u64());
}

TEST(RandomSource, SubstreamDependsOnParentOnly) {
  const RandomSource parent(9, 1);
  RandomSource used(9, 1);
  used.next_u64();  // advancing the parent must not move its substreams
  RandomSource s1 = parent.substream(5), s2 = used.substream(5);
  EXPECT_EQ(s1.next_u64(), s2.next_u64());
  EXPECT_NE(parent.substream(5).next_u64(), parent.substream(6).next_u64());
}

TEST(RandomSource, UniformMomentsAndRange) {
  RandomSource rng(1, 0);
  std::vector<double> xs(kSamples);
  for (auto& x : xs) {
    x = rng.uniform();
    ASSERT_GE(x, 0.0);
    ASSERT_LT(x, 1.0);
  }
  const MeanEstimate m = mean_estimate(xs);
  EXPECT_NEAR(m.mean, 0.5, 5 * std::sqrt(1.0 / 12.0 / kSamples));
  EXPECT_LT(ks_statistic(xs, [](double x) { return x; }), 1.95 / std::sqrt(kSamples));
}

TEST(RandomSource, BelowIsUniformOverSmallRange) {
  RandomSource rng(2, 0);
  std::vector<int> counts(3, 0);
  for (int i = 0; i < 30000; ++i) ++counts[rng.below(3)];
  // Chi-square with 2 degrees of freedom; 13.8 is the 0.1% point.
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - 10000.0) * (c - 10000.0) / 10000.0;
  EXPECT_LT(chi2, 13.8);
}

TEST(RandomSource, ComplexNormalHasUnitSecondMoment) {
  RandomSource rng(3, 0);
  double re = 0.0, im = 0.0, second = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const auto z = rng.complex_normal();
    re += z.real();
    im += z.imag();
    second += std::norm(z);
  }
  EXPECT_NEAR(re / kSamples, 0.0, 5 * std::sqrt(0.5 / kSamples));
  EXPECT_NEAR(im / kSamples, 0.0, 5 * std::sqrt(0.5 / kSamples));
  EXPECT_NEAR(second / kSamples, 1.0, 5 * std::sqrt(1.0 / kSamples));
}

TEST(HaarUnitary, OneDimensionalIsUniformPhase) {
  RandomSource rng(4, 0);
  std::vector<double> phases;
  for (int i = 0; i < 20000; ++i) {
    const UnitaryMatrix u = sample_haar_unitary(1, rng);
    ASSERT_NEAR(std::abs(u(0, 0)), 1.0, 1e-12);
    double p = std::arg(u(0, 0)) / (2 * std::numbers::pi);
    phases.push_back(p < 0 ? p + 1 : p);
  }
  EXPECT_LT(ks_statistic(phases, [](double x) { return x; }), 1.95 / std::sqrt(20000.0));
}

TEST(HaarUnitary, IsUnitary) {
  RandomSource rng(5, 0);
  for (int d : {2, 3, 4, 8, 16}) {
    const UnitaryMatrix u = sample_haar_unitary(d, rng);
    EXPECT_LT(unitarity_defect(u.matrix()), 1e-12);
  }
}

TEST(HaarUnitary, SecondAndFourthMomentsD4) {
  RandomSource rng(6, 0);
  const int d = 4;
  double m2 = 0.0, m4 = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const double x = std::norm(sample_haar_unitary(d, rng)(1, 2));
    m2 += x;
    m4 += x * x;
  }
  m2 /= kSamples;
  m4 /= kSamples;
  EXPECT_NEAR(m2, 0.25, 0.01);
  // E|U_ij|^4 = 2 / (d (d + 1)).
  EXPECT_NEAR(m4, 2.0 / (d * (d + 1)), 0.01);
}

TEST(HaarUnitary, FirstMomentVanishesD2) {
  RandomSource rng(7, 0);
  Complex sum{0.0, 0.0};
  for (int i = 0; i < kSamples; ++i) sum += sample_haar_unitary(2, rng)(0, 0);
  EXPECT_NEAR(sum.real() / kSamples, 0.0, 0.01);
  EXPECT_NEAR(sum.imag() / kSamples, 0.0, 0.01);
}

TEST(HaarUnitary, LeftInvarianceOfColumnLaw) {
  // W U must have the same law as U; compare |(W U)_00|^2 to the exact CDF.
  RandomSource wrng(8, 1);
  const UnitaryMatrix w = sample_haar_unitary(4, wrng);
  RandomSource rng(8, 0);
  std::vector<double> f;
  for (int i = 0; i < 50000; ++i) f.push_back(std::norm((w * sample_haar_unitary(4, rng))(0, 0)));
  const auto cdf = [](double x) { return 1.0 - std::pow(1.0 - x, 3); };
  EXPECT_LT(ks_statistic(f, cdf), 1.95 / std::sqrt(50000.0));
}

TEST(HaarUnitary, Deterministic) {
  RandomSource a(10, 2), b(10, 2);
  EXPECT_EQ(max_abs(sample_haar_unitary(4, a).matrix() - sample_haar_unitary(4, b).matrix()), 0.0);
}

TEST(HaarUnitary, RejectsBadDimensions) {
  RandomSource rng(0, 0);
  EXPECT_THROW(sample_haar_unitary(0, rng), InvalidArgument);
  EXPECT_THROW(sample_haar_unitary(17, rng), GuardError);
}

TEST(HaarState, FidelityLawD4) {
  RandomSource rng(11, 0);
  std::vector<double> f;
  for (int i = 0; i < kSamples; ++i) f.push_back(std::norm(sample_haar_state(4, rng)[0]));
  EXPECT_NEAR(mean_estimate(f).mean, 0.25, 0.01);
  const auto cdf = [](double x) { return 1.0 - std::pow(1.0 - x, 3); };
  EXPECT_LT(ks_statistic(f, cdf), 0.01);
}

TEST(HaarState, OneDimensionalIsUnitModulus) {
  RandomSource rng(12, 0);
  EXPECT_NEAR(std::abs(sample_haar_state(1, rng)[0]), 1.0, 1e-15);
}

TEST(QuotientClass, TrivialGroupMatchesPlainSampler) {
  auto group = std::make_shared<const SymmetryGroup>(trivial_group(4));
  RandomSource a(13, 0), b(13, 0);
  const QuotientSample x = sample_quotient_class(4, group, a);
  EXPECT_EQ(max_abs(x.representative.matrix() - sample_haar_unitary(4, b).matrix()), 0.0);
}

TEST(QuotientClass, SwapOrbitHasTwoDistinctElements) {
  auto group = std::make_shared<const SymmetryGroup>(builtin_group("swap-2q", 4));
  RandomSource rng(14, 0);
  for (int i = 0; i < 20; ++i) {
    const QuotientSample x = sample_quotient_class(4, group, rng);
    const ComplexMatrix a = x.representative.matrix();
    const ComplexMatrix b = (*group)[1].matrix() * a;
    EXPECT_GT(max_abs(a - b), 1e-6);
  }
}

TEST(QuotientClass, CosetInvariantStatisticMatchesFullGroupMonteCarlo) {
  auto group = std::make_shared<const SymmetryGroup>(builtin_group("swap-2q", 4));
  const ComplexMatrix swap = oracle::swap4();
  RandomSource qrng(15, 0), hrng(16, 0);
  std::vector<double> s_quot(kSamples), s_full(kSamples);
  for (int i = 0; i < kSamples; ++i) {
    const QuotientSample x = sample_quotient_class(4, group, qrng);
    double best = 0.0;
    for (const auto& h : group->elements()) {
      best = std::max(best, std::norm((h * x.representative)(0, 0)));
    }
    s_quot[i] = best;
    const ComplexMatrix u = sample_haar_unitary(4, hrng).matrix();
    s_full[i] = std::max(std::norm(u(0, 0)), std::norm(ComplexMatrix(swap * u)(0, 0)));
  }
  const MeanEstimate a = mean_estimate(s_quot), b = mean_estimate(s_full);
  EXPECT_LT(std::abs(a.mean - b.mean), 2.0 * std::hypot(a.std_error, b.std_error));
}

TEST(QuotientClass, DimensionMismatchThrows) {
  auto group = std::make_shared<const SymmetryGroup>(trivial_group(2));
  RandomSource rng(0, 0);
  EXPECT_THROW(sample_quotient_class(4, group, rng), DimensionError);
}

TEST(HaarFidelityLaw, PdfValuesAndNormalization) {
  for (double f : {0.0, 0.3, 0.9}) EXPECT_DOUBLE_EQ(haar_fidelity_pdf(f, 2), 1.0);
  EXPECT_DOUBLE_EQ(haar_fidelity_pdf(0.0, 4), 3.0);
  // Composite Simpson on a fine grid.
  const int n = 20000;
  double sum = haar_fidelity_pdf(0.0, 4) + haar_fidelity_pdf(1.0, 4);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * haar_fidelity_pdf(double(i) / n, 4);
  EXPECT_NEAR(sum / (3.0 * n), 1.0, 1e-8);
  EXPECT_NEAR(haar_fidelity_cdf(0.5, 4), 1.0 - 0.125, 1e-15);
}

}  // namespace
}  // namespace homexpr
