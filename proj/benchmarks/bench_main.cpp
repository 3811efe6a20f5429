// Copyright 2026 The infdim Authors
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

#include <cstddef>
#include <vector>

#include <benchmark/benchmark.h>

#include "infdim/distributions.hpp"
#include "infdim/inference.hpp"
#include "infdim/oracle.hpp"
#include "infdim/pointloc.hpp"
#include "infdim/rpu.hpp"

namespace infdim {
namespace {

void BM_InferSingle(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto m = static_cast<std::size_t>(state.range(1));
  Rng rng({1, 0});
  const auto spec = DistributionSpec::uniform_ball(d);
  Oracle oracle(sample_tangent_hyperplane(d, rng));
  ConstraintSet c(d);
  for (const Point& p : sample_n(spec, m, rng)) c.add(oracle.label_query(p));
  const Point z = sample(spec, rng);
  for (auto _ : state) benchmark::DoNotOptimize(infer(c, z));
}
BENCHMARK(BM_InferSingle)->Args({2, 32})->Args({3, 128})->Args({8, 256});

void BM_PerfectLearning(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto kind = state.range(1) != 0 ? QueryKind::Comparison : QueryKind::Label;
  Rng setup({2, 0});
  const auto spec = DistributionSpec::uniform_ball(3);
  const Hyperplane h = sample_tangent_hyperplane(3, setup);
  const auto pts = sample_n(spec, n, setup);
  for (auto _ : state) {
    Oracle oracle(h);
    Rng rng({2, 1});
    benchmark::DoNotOptimize(perfect_learning(pts, kind, {}, oracle, rng));
  }
}
BENCHMARK(BM_PerfectLearning)->Args({256, 0})->Args({256, 1})->Args({1024, 1})->Unit(benchmark::kMillisecond);

void BM_Locate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng setup({3, 0});
  const Arrangement arr = sample_arrangement(DistributionSpec::gaussian(4), n, setup);
  const Point x = sample(DistributionSpec::uniform_ball(3), setup);
  for (auto _ : state) {
    Rng rng({3, 1});
    benchmark::DoNotOptimize(locate(x, arr, {}, rng));
  }
}
BENCHMARK(BM_Locate)->Arg(128)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace infdim

BENCHMARK_MAIN();
