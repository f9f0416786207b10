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

#include "pg2/sampling.h"

#include <cmath>
#include <string>
#include <vector>

#include "pg2/error.h"
#include "pg2/halton.h"
#include "pg2/random.h"

namespace pg2 {
namespace {

template <typename GapFn>
double MeanOfGaps(const TreeEnsemble& ensemble, std::span<const double> x,
                  const FeatureSet& perturbed, const PerturbationSpec& spec,
                  const EstimatorConfig& config, GapFn gap_fn) {
  ensemble.CheckInput(x);
  if (config.iterations < 1) {
    Fail(ErrorKind::kInvalidArgument, "iterations must be at least 1");
  }
  const auto features = perturbed.indices();
  std::vector<const Distribution*> dists;
  for (int q : features) {
    if (q >= ensemble.num_features()) {
      Fail(ErrorKind::kInvalidArgument,
           "perturbed feature " + std::to_string(q) + " is out of range");
    }
    dists.push_back(&spec.For(q));
  }
  if (features.empty()) return 0.0;
  if (config.method == SamplingMethod::kQuasiMonteCarlo) {
    HaltonBase(static_cast<int>(features.size()) - 1);  // capacity check
  }

  const double c = ensemble.PredictUnchecked(x);
  std::vector<double> sample(x.begin(), x.end());
  Rng rng(config.seed);
  double sum = 0.0;
  for (int64_t k = 1; k <= config.iterations; ++k) {
    for (size_t j = 0; j < features.size(); ++j) {
      const double delta =
          config.method == SamplingMethod::kMonteCarlo
              ? dists[j]->Sample(rng)
              : dists[j]->InverseCdf(
                    RadicalInverse(static_cast<uint64_t>(k), HaltonBase(j)));
      sample[features[j]] = x[features[j]] + delta;
    }
    sum += gap_fn(ensemble.PredictUnchecked(sample) - c);
  }
  return sum / static_cast<double>(config.iterations);
}

}  // namespace

SamplingMethod ParseSamplingMethod(std::string_view name) {
  if (name == "mc") return SamplingMethod::kMonteCarlo;
  if (name == "qmc") return SamplingMethod::kQuasiMonteCarlo;
  Fail(ErrorKind::kInvalidArgument,
       "unknown sampling method \"" + std::string(name) + "\"");
}

std::string_view SamplingMethodName(SamplingMethod method) {
  return method == SamplingMethod::kMonteCarlo ? "mc" : "qmc";
}

double Pg2Sampled(const TreeEnsemble& ensemble, std::span<const double> x,
                  const FeatureSet& perturbed, const PerturbationSpec& spec,
                  const EstimatorConfig& config) {
  return MeanOfGaps(ensemble, x, perturbed, spec, config,
                    [](double gap) { return gap * gap; });
}

double PgAbsSampled(const TreeEnsemble& ensemble, std::span<const double> x,
                    const FeatureSet& perturbed, const PerturbationSpec& spec,
                    const EstimatorConfig& config) {
  return MeanOfGaps(ensemble, x, perturbed, spec, config,
                    [](double gap) { return std::fabs(gap); });
}

}  // namespace pg2
