// Copyright 2026 The edgebandit Authors.
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

#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "edgebandit/edge_env.h"
#include "edgebandit/policies.h"
#include "edgebandit/rng.h"
#include "edgebandit/runner.h"
#include "edgebandit/scenario_io.h"

namespace edgebandit {
namespace {

void BM_RidgeUpdate(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  RidgeState ridge(dim, 1.0);
  CounterRng rng(1, Stream::kNoise, 1);
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v[i] = rng.Uniform01() / dim;
  const FeatureVector x(v);
  for (auto _ : state) {
    ridge.Update(x, 0.5);
    benchmark::DoNotOptimize(ridge.theta_hat().data());
  }
}
BENCHMARK(BM_RidgeUpdate)->Arg(4)->Arg(8)->Arg(16);

void BM_SamplingDistribution(benchmark::State& state) {
  std::vector<double> estimates(static_cast<size_t>(state.range(0)));
  for (size_t g = 0; g < estimates.size(); ++g) estimates[g] = 10.0 * g;
  for (auto _ : state) {
    benchmark::DoNotOptimize(SamplingDistribution(estimates, 3.8, 0.38));
  }
}
BENCHMARK(BM_SamplingDistribution)->Arg(4)->Arg(64);

void BM_EnumerateAssignments(benchmark::State& state) {
  const DnnProfile dnn = BundledProfile("yolo");
  const int hops = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(EnumerateAssignments(hops, dnn));
  }
}
BENCHMARK(BM_EnumerateAssignments)->Arg(1)->Arg(2)->Arg(3);

void BM_RunSingle(benchmark::State& state) {
  const ExperimentConfig cfg = Preset("mixed");
  const EdgeEnvironment env(BuildScenario(cfg));
  const auto kind = static_cast<PolicyKind>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunSingle(cfg, env, kind, seed++));
  }
  state.SetLabel(std::string(PolicyKindName(kind)));
}
BENCHMARK(BM_RunSingle)
    ->Arg(static_cast<int>(PolicyKind::kBExpUcb))
    ->Arg(static_cast<int>(PolicyKind::kExpUcb))
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace edgebandit

BENCHMARK_MAIN();
