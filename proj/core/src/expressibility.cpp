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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "homexpr/errors.hpp"
#include "homexpr/haar.hpp"
#include "homexpr/parallel.hpp"

namespace homexpr {

namespace {

constexpr double kPeriod = 2.0 * std::numbers::pi;
constexpr int kGridPoints = 24;
constexpr int kGoldenIters = 40;

double wrap_angle(double x) {
  double r = std::fmod(x, kPeriod);
  if (r < 0.0) r += kPeriod;
  if (r >= kPeriod) r = 0.0;
  return r;
}

// Orbit vectors of one target and a scratch buffer for the ansatz output.
class TargetObjective {
 public:
  TargetObjective(const CircuitAnsatz& ansatz, std::vector<ComplexVector> orbit)
      : ansatz_(ansatz), orbit_(std::move(orbit)), buffer_(ansatz.dim()) {}

  double operator()(std::span<const double> theta) {
    simulate_into(ansatz_, theta, buffer_);
    double best_fid = 0.0;
    for (const auto& o : orbit_) {
      const double f = std::norm(inner(std::span<const Complex>(o.data(), o.size()), buffer_));
      best_fid = std::max(best_fid, f);
    }
    return std::clamp(1.0 - best_fid, 0.0, 1.0);
  }

 private:
  const CircuitAnsatz& ansatz_;
  std::vector<ComplexVector> orbit_;
  std::vector<Complex> buffer_;
};

void check_elements(const CircuitAnsatz& ansatz, std::span<const UnitaryMatrix> elements,
                    const ExpressibilityConfig& cfg) {
  cfg.validate();
  if (elements.empty()) throw InvalidArgument("symmetry set is empty");
  for (const auto& h : elements) {
    if (h.dim() != ansatz.dim()) {
      throw DimensionError("ansatz '" + ansatz.label() + "' has dim " +
                           std::to_string(ansatz.dim()) + " but symmetry acts on dim " +
                           std::to_string(h.dim()));
    }
  }
  const double evaluations = static_cast<double>(cfg.haar_samples) *
                             static_cast<double>(elements.size()) *
                             static_cast<double>(cfg.theta_samples);
  if (evaluations > kMaxEvaluations) {
    throw GuardError("M*|H|*N = " + std::to_string(evaluations) + " exceeds the limit of " +
                     std::to_string(kMaxEvaluations) + " evaluations");
  }
}

ExpressibilityReport run_estimate(const CircuitAnsatz& ansatz,
                                  std::span<const UnitaryMatrix> elements,
                                  const ExpressibilityConfig& cfg, std::string group_label,
                                  bool upper_bound) {
  check_elements(ansatz, elements, cfg);
  const std::size_t m = cfg.haar_samples;
  ExpressibilityReport report;
  report.per_target_minima.assign(m, 0.0);
  parallel_for(m, cfg.threads, [&](std::size_t i) {
    report.per_target_minima[i] = target_minimum(ansatz, elements, cfg, i);
  });

  double sum = 0.0;
  for (double v : report.per_target_minima) sum += v;
  report.estimate = sum / static_cast<double>(m);
  if (m > 1) {
    double ss = 0.0;
    for (double v : report.per_target_minima) ss += (v - report.estimate) * (v - report.estimate);
    report.std_error = std::sqrt(ss / static_cast<double>(m - 1)) / std::sqrt(static_cast<double>(m));
  }
  report.config = cfg;
  report.ansatz = ansatz.label();
  report.group = std::move(group_label);
  report.upper_bound = upper_bound;
  return report;
}

}  // namespace

void ExpressibilityConfig::validate() const {
  if (haar_samples == 0) throw InvalidArgument("haar_samples (M) must be >= 1");
  if (theta_samples == 0) throw InvalidArgument("theta_samples (N) must be >= 1");
  if (refine_iters < 0) throw InvalidArgument("refine_iters must be >= 0");
  if (!(refine_shrink > 0.0 && refine_shrink < 1.0)) {
    throw InvalidArgument("refine_shrink must lie in (0, 1)");
  }
}

double coordinate_refine(const std::function<double(std::span<const double>)>& objective,
                         std::span<double> theta, int iters, double shrink) {
  double current = objective(theta);
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double half = std::numbers::pi;
  for (int pass = 0; pass < iters; ++pass, half *= shrink) {
    for (std::size_t c = 0; c < theta.size(); ++c) {
      const double center = theta[c];
      auto along = [&](double x) {
        theta[c] = wrap_angle(x);
        return objective(theta);
      };

      const double step = 2.0 * half / kGridPoints;
      double best_x = center;
      double best_f = current;
      for (int k = 0; k <= kGridPoints; ++k) {
        const double x = center - half + step * k;
        const double f = along(x);
        if (f < best_f) {
          best_f = f;
          best_x = x;
        }
      }

      double lo = best_x - step;
      double hi = best_x + step;
      double x1 = hi - phi * (hi - lo);
      double x2 = lo + phi * (hi - lo);
      double f1 = along(x1);
      double f2 = along(x2);
      for (int it = 0; it < kGoldenIters; ++it) {
        if (f1 < f2) {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - phi * (hi - lo);
          f1 = along(x1);
        } else {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + phi * (hi - lo);
          f2 = along(x2);
        }
      }
      if (f1 < best_f) {
        best_f = f1;
        best_x = x1;
      }
      if (f2 < best_f) {
        best_f = f2;
        best_x = x2;
      }

      if (best_f < current) {
        theta[c] = wrap_angle(best_x);
        current = best_f;
      } else {
        theta[c] = center;
      }
    }
  }
  return current;
}

double target_minimum(const CircuitAnsatz& ansatz, std::span<const UnitaryMatrix> elements,
                      const ExpressibilityConfig& cfg, std::uint64_t target_index) {
  RandomSource rng(cfg.seed, target_index);
  const StateVector target = sample_haar_state(ansatz.dim(), rng);
  std::vector<ComplexVector> orbit;
  orbit.reserve(elements.size());
  for (const auto& h : elements) orbit.push_back(h.matrix() * target.amplitudes());
  TargetObjective objective(ansatz, std::move(orbit));

  const std::size_t p = static_cast<std::size_t>(ansatz.num_params());
  std::vector<double> theta(p);
  std::vector<double> best_theta(p);
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t i = 0; i < cfg.theta_samples; ++i) {
    sample_parameters_into(ansatz, rng, theta);
    const double f = objective(theta);
    if (f < best) {
      best = f;
      best_theta = theta;
    }
  }
  if (cfg.refine_iters > 0 && p > 0) {
    const double refined = coordinate_refine(
        [&](std::span<const double> t) { return objective(t); }, best_theta, cfg.refine_iters,
        cfg.refine_shrink);
    best = std::min(best, refined);
  }
  return best;
}

ExpressibilityReport estimate_expressibility(const CircuitAnsatz& ansatz,
                                             const SymmetryGroup& group,
                                             const ExpressibilityConfig& cfg) {
  return run_estimate(ansatz, group.elements(), cfg, group.label(), false);
}

ExpressibilityReport estimate_expressibility(const CircuitAnsatz& ansatz,
                                             const FiniteSymmetrySet& net,
                                             const ExpressibilityConfig& cfg) {
  return run_estimate(ansatz, net.elements(), cfg, net.label(), true);
}

ExpressibilityReport estimate_expressibility_full(const CircuitAnsatz& ansatz,
                                                  const ExpressibilityConfig& cfg) {
  return estimate_expressibility(ansatz, trivial_group(ansatz.dim()), cfg);
}

double haar_fidelity_pdf(double fidelity, int d) {
  if (d < 2) throw InvalidArgument("Haar fidelity law needs d >= 2, got " + std::to_string(d));
  if (!(fidelity >= 0.0 && fidelity <= 1.0)) {
    throw InvalidArgument("fidelity must lie in [0, 1], got " + std::to_string(fidelity));
  }
  return (d - 1) * std::pow(1.0 - fidelity, d - 2);
}

double haar_fidelity_cdf(double fidelity, int d) {
  if (d < 2) throw InvalidArgument("Haar fidelity law needs d >= 2, got " + std::to_string(d));
  const double f = std::clamp(fidelity, 0.0, 1.0);
  return 1.0 - std::pow(1.0 - f, d - 1);
}

SimExpressibility sim_expressibility_detailed(const CircuitAnsatz& ansatz, std::uint64_t pairs,
                                              int bins, const RandomSource& rng,
                                              unsigned threads) {
  if (bins < 2) throw InvalidArgument("bins must be >= 2, got " + std::to_string(bins));
  if (pairs == 0) throw InvalidArgument("pairs must be >= 1");
  const int d = ansatz.dim();

  std::vector<int> bin_of(pairs);
  parallel_for(pairs, threads, [&](std::size_t k) {
    RandomSource stream = rng.substream(k);
    const ParameterVector a = sample_parameters(ansatz, stream);
    const ParameterVector b = sample_parameters(ansatz, stream);
    const double f = fidelity(simulate(ansatz, a), simulate(ansatz, b));
    bin_of[k] = std::clamp(static_cast<int>(f * bins), 0, bins - 1);
  });

  SimExpressibility out;
  out.histogram.bins = bins;
  out.histogram.counts.assign(bins, 0);
  out.histogram.sample_count = pairs;
  for (int b : bin_of) ++out.histogram.counts[b];

  const double floor = std::numeric_limits<double>::min();
  double kl = 0.0;
  for (int b = 0; b < bins; ++b) {
    if (out.histogram.counts[b] == 0) continue;
    const double p = static_cast<double>(out.histogram.counts[b]) / static_cast<double>(pairs);
    const double q = std::max(haar_fidelity_cdf(out.histogram.bin_hi(b), d) -
                                  haar_fidelity_cdf(out.histogram.bin_lo(b), d),
                              floor);
    kl += p * std::log(p / q);
  }
  out.kl = kl;
  return out;
}

double sim_expressibility(const CircuitAnsatz& ansatz, std::uint64_t pairs, int bins,
                          const RandomSource& rng) {
  return sim_expressibility_detailed(ansatz, pairs, bins, rng).kl;
}

}  // namespace homexpr
