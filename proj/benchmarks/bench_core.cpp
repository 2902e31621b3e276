// Copyright 2026 The nbvqpco authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "nbvqpco/carleman.hpp"
#include "nbvqpco/kron.hpp"
#include "nbvqpco/sigma.hpp"
#include "nbvqpco/vqls.hpp"

using namespace nbvqpco;

namespace {

BurgersConfig bench_config(Index n_x, Index n_t) {
  BurgersConfig cfg;
  cfg.n_x = n_x;
  cfg.n_t = n_t;
  cfg.x_p_index = 1;
  return cfg;
}

void BM_KronPower(benchmark::State& state) {
  const Vector x = Vector::Random(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kron_power(x, 3));
  }
}
BENCHMARK(BM_KronPower)->Arg(4)->Arg(8)->Arg(16);

void BM_Assemble(benchmark::State& state) {
  const QuadODE ode = discretize_burgers(bench_config(4, 8));
  const CarlemanSystem carl = build_carleman(ode, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble(carl, 0.35, 8, Scheme::kBackward));
  }
}
BENCHMARK(BM_Assemble)->Arg(1)->Arg(2)->Arg(3);

void BM_SolveDirect(benchmark::State& state) {
  const QuadODE ode = discretize_burgers(bench_config(4, 8));
  const CarlemanSystem carl = build_carleman(ode, static_cast<int>(state.range(0)));
  const BlockLinearSystem sys = assemble(carl, 0.35, 8, Scheme::kBackward);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_direct(sys));
  }
}
BENCHMARK(BM_SolveDirect)->Arg(1)->Arg(2)->Arg(3);

void BM_DecomposePipeline(benchmark::State& state) {
  const QuadODE ode = discretize_burgers(bench_config(4, 8));
  const CarlemanSystem carl = build_carleman(ode, static_cast<int>(state.range(0)));
  const BlockLinearSystem sys = assemble(carl, 0.35, 8, Scheme::kBackward);
  for (auto _ : state) {
    benchmark::DoNotOptimize(decompose_pipeline(sys));
  }
}
BENCHMARK(BM_DecomposePipeline)->Arg(1)->Arg(2)->Arg(3);

void BM_SigmaApply(benchmark::State& state) {
  const QuadODE ode = discretize_burgers(bench_config(4, 8));
  const BlockLinearSystem sys =
      assemble(build_carleman(ode, static_cast<int>(state.range(0))), 0.35, 8,
               Scheme::kBackward);
  const SigmaDecomposition dec = decompose_pipeline(sys).at_parameter(0.07);
  const Vector x = Vector::Random(dec.dim());
  for (auto _ : state) {
    benchmark::DoNotOptimize(dec.apply(x));
  }
}
BENCHMARK(BM_SigmaApply)->Arg(1)->Arg(2);

void BM_CostAndGradient(benchmark::State& state) {
  const QuadODE ode = discretize_burgers(bench_config(4, 8));
  const BlockLinearSystem sys =
      assemble(build_carleman(ode, static_cast<int>(state.range(0))), 0.35, 8,
               Scheme::kBackward);
  const SigmaDecomposition dec = decompose_pipeline(sys).at_parameter(0.07);
  const Vector b = sys.b_tilde / sys.b_tilde.norm();
  const VqlsProblem problem =
      VqlsProblem::make(std::make_shared<SigmaMap>(dec), b);
  const Ansatz ansatz{problem.n_qubits(), 3};
  const Vector theta = Vector::Random(ansatz.parameter_count());
  for (auto _ : state) {
    benchmark::DoNotOptimize(cost_and_gradient(problem, ansatz, theta));
  }
}
BENCHMARK(BM_CostAndGradient)->Arg(1)->Arg(2);

}  // namespace

BENCHMARK_MAIN();
