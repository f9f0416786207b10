/*
 * Copyright 2026 The PG2 Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Exact PG2 against the samplers on perfect synthetic ensembles. Absolute
// times are machine-specific; compare exact vs sampler and n vs 2n.
#include <benchmark/benchmark.h>

#include <vector>

#include "pg2/exact.h"
#include "pg2/random.h"
#include "pg2/ranking.h"
#include "pg2/sampling.h"
#include "pg2/synthetic.h"

namespace pg2 {
namespace {

constexpr int kFeatures = 8;

struct Setup {
  TreeEnsemble ensemble;
  FeatureVector x;
  PerturbationSpec spec;
};

Setup MakeSetup(int trees, int depth) {
  Rng rng(DeriveSeed(trees, depth));
  TreeEnsemble e = RandomEnsemble(
      {.num_trees = trees, .max_depth = depth, .num_features = kFeatures}, rng);
  return {std::move(e), RandomPoint(kFeatures, rng),
          PerturbationSpec::Shared(Distribution::Gaussian(0.3), kFeatures)};
}

void BM_Pg2Exact(benchmark::State& state) {
  const Setup s = MakeSetup(static_cast<int>(state.range(0)), 4);
  const FeatureSet all = FeatureSet::All(kFeatures);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Pg2Exact(s.ensemble, s.x, all, s.spec));
  }
  state.counters["nodes"] = s.ensemble.node_count();
  state.SetComplexityN(s.ensemble.node_count());
}
BENCHMARK(BM_Pg2Exact)->RangeMultiplier(2)->Range(10, 160)->Complexity(benchmark::oNSquared);

void BM_Pg2ExactNoPruning(benchmark::State& state) {
  const Setup s = MakeSetup(static_cast<int>(state.range(0)), 4);
  const FeatureSet all = FeatureSet::All(kFeatures);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        Pg2Exact(s.ensemble, s.x, all, s.spec, {.prune_zero_products = false}));
  }
  state.SetComplexityN(s.ensemble.node_count());
}
BENCHMARK(BM_Pg2ExactNoPruning)->RangeMultiplier(2)->Range(10, 160)->Complexity(benchmark::oNSquared);

void BM_Sampler(benchmark::State& state, SamplingMethod method) {
  const Setup s = MakeSetup(40, 4);
  const FeatureSet all = FeatureSet::All(kFeatures);
  const EstimatorConfig config{method, state.range(0), 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(Pg2Sampled(s.ensemble, s.x, all, s.spec, config));
  }
}
BENCHMARK_CAPTURE(BM_Sampler, mc, SamplingMethod::kMonteCarlo)->Arg(1000)->Arg(10000)->Arg(35000);
BENCHMARK_CAPTURE(BM_Sampler, qmc, SamplingMethod::kQuasiMonteCarlo)->Arg(1000)->Arg(10000)->Arg(35000);

void BM_GreedyRanking(benchmark::State& state) {
  const Setup s = MakeSetup(static_cast<int>(state.range(0)), 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(GreedyPg2Ranking(s.ensemble, s.x, s.spec));
  }
}
BENCHMARK(BM_GreedyRanking)->Arg(10)->Arg(40);

}  // namespace
}  // namespace pg2

BENCHMARK_MAIN();
