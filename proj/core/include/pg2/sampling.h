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

#ifndef PG2_SAMPLING_H_
#define PG2_SAMPLING_H_

#include <cstdint>
#include <span>
#include <string_view>

#include "pg2/feature_set.h"
#include "pg2/model.h"
#include "pg2/perturb.h"

namespace pg2 {

enum class SamplingMethod {
  kMonteCarlo,       // i.i.d. draws from the per-feature distributions
  kQuasiMonteCarlo,  // Halton points mapped through the inverse CDFs
};

SamplingMethod ParseSamplingMethod(std::string_view name);
std::string_view SamplingMethodName(SamplingMethod method);

struct EstimatorConfig {
  SamplingMethod method = SamplingMethod::kMonteCarlo;
  int64_t iterations = 1000;
  // Seeds the Monte Carlo stream. Ignored by the quasi-random method, which
  // always uses Halton points 1..iterations.
  uint64_t seed = 0;
};

// Mean of (f(x') - f(x))^2 over `iterations` perturbed inputs. The Halton
// coordinate j drives the j-th smallest feature of `perturbed`.
double Pg2Sampled(const TreeEnsemble& ensemble, std::span<const double> x,
                  const FeatureSet& perturbed, const PerturbationSpec& spec,
                  const EstimatorConfig& config);

// Mean of |f(x') - f(x)| under the same sampling scheme.
double PgAbsSampled(const TreeEnsemble& ensemble, std::span<const double> x,
                    const FeatureSet& perturbed, const PerturbationSpec& spec,
                    const EstimatorConfig& config);

}  // namespace pg2

#endif  // PG2_SAMPLING_H_
