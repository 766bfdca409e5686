// Copyright 2026 The dapt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dapt/engine.hpp"
#include "dapt/grid.hpp"
#include "dapt/models.hpp"
#include "dapt/oracle.hpp"
#include "dapt/pipeline.hpp"

#include <benchmark/benchmark.h>

#include <numbers>

namespace {

using namespace dapt;

const GammaModel kModel{1.0, std::numbers::pi / 3, 0.01, 1.0};

void BM_SpectralPath(benchmark::State& state) {
  const GammaHamiltonian h(kModel);
  const Grid grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_spectral_path(h, grid));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SpectralPath)->RangeMultiplier(4)->Range(256, 4096)->Complexity(benchmark::oN);

void BM_Transport(benchmark::State& state) {
  const GammaHamiltonian h(kModel);
  const Grid grid(static_cast<std::size_t>(state.range(0)));
  const SpectralPath path = analytic_path(h, grid);
  const CouplingSet cs = compute_couplings(h, path);
  const auto scheme = state.range(1) == 0 ? TransportScheme::kMidpoint : TransportScheme::kGauss4;
  const CMatrix u0 = CMatrix::Identity(2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(transport_level(cs, 0, u0, scheme));
}
BENCHMARK(BM_Transport)->ArgsProduct({{1024, 4096}, {0, 1}});

void BM_BuildSeries(benchmark::State& state) {
  const GammaHamiltonian h(kModel);
  const Grid grid(2001);
  PipelineOptions options;
  options.order_cap = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_series(h, grid, options));
}
BENCHMARK(BM_BuildSeries)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_AssembleSum(benchmark::State& state) {
  const DaptSeries series = build_series(GammaHamiltonian(kModel), Grid(2001));
  for (auto _ : state) benchmark::DoNotOptimize(series.sum(1, kModel.v()));
}
BENCHMARK(BM_AssembleSum)->Unit(benchmark::kMillisecond);

void BM_Propagate(benchmark::State& state) {
  const GammaModel m{1.0, std::numbers::pi / 3, 0.01 * static_cast<double>(state.range(0)), 1.0};
  const GammaHamiltonian h(m);
  const Grid grid(2001);
  const CVector psi0 = gamma_exact(m, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(propagate(h, m.v(), psi0, grid));
}
BENCHMARK(BM_Propagate)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
