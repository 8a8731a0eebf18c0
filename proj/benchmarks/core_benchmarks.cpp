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

#include <benchmark/benchmark.h>

#include <vector>

#include "homexpr/circuit.hpp"
#include "homexpr/design.hpp"
#include "homexpr/expressibility.hpp"
#include "homexpr/haar.hpp"
#include "homexpr/symmetry.hpp"

namespace homexpr {
namespace {

void BM_SampleHaarUnitary(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  RandomSource rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(sample_haar_unitary(d, rng));
}
BENCHMARK(BM_SampleHaarUnitary)->Arg(2)->Arg(4)->Arg(16);

void BM_SimulateInto(benchmark::State& state) {
  const CircuitAnsatz a = builtin_circuit("paper-circuit-2");
  RandomSource rng(2, 0);
  const ParameterVector theta = sample_parameters(a, rng);
  std::vector<Complex> out(a.dim());
  for (auto _ : state) {
    simulate_into(a, theta, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_SimulateInto);

// One target of the estimator; range(0) is N, range(1) the refinement passes.
void BM_TargetMinimum(benchmark::State& state) {
  const CircuitAnsatz a = builtin_circuit("paper-circuit-1");
  const SymmetryGroup h = builtin_group("swap-2q", 4);
  ExpressibilityConfig cfg;
  cfg.theta_samples = static_cast<std::uint64_t>(state.range(0));
  cfg.refine_iters = static_cast<int>(state.range(1));
  cfg.seed = 3;
  std::uint64_t m = 0;
  for (auto _ : state) benchmark::DoNotOptimize(target_minimum(a, h.elements(), cfg, m++));
}
BENCHMARK(BM_TargetMinimum)->Args({1000, 0})->Args({4000, 0})->Args({4000, 3});

void BM_FramePotential(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  RandomSource rng(4, 0);
  std::vector<StateVector> states;
  for (int i = 0; i < size; ++i) states.push_back(sample_haar_state(4, rng));
  const StateEnsemble ens = StateEnsemble::uniform(std::move(states));
  for (auto _ : state) benchmark::DoNotOptimize(frame_potential(ens, 2));
}
BENCHMARK(BM_FramePotential)->Arg(16)->Arg(256);

}  // namespace
}  // namespace homexpr

BENCHMARK_MAIN();
