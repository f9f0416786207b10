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

#ifndef PG2_METRICS_H_
#define PG2_METRICS_H_

#include <cstdint>
#include <span>

#include "pg2/data.h"
#include "pg2/exact.h"
#include "pg2/feature_set.h"
#include "pg2/model.h"
#include "pg2/perturb.h"
#include "pg2/ranking.h"

namespace pg2 {

// Mean of the exact squared prediction gap over the d nested prefixes of
// `ranking`: (1/d) * sum_k PG2(x, ranking[1..k]).
double Pgi2(const TreeEnsemble& ensemble, std::span<const double> x,
            const Ranking& ranking, const PerturbationSpec& spec,
            const ExactOptions& options = {});

// Average Pgi2 over the dataset; rankings[i] belongs to dataset row i.
double MeanPgi2(const TreeEnsemble& ensemble, const Dataset& dataset,
                std::span<const Ranking> rankings, const PerturbationSpec& spec,
                int threads = 1);

// sum |truth - estimate| / sum |truth|. Throws Error(kNumericDomain) when
// every truth value is zero.
double Nmae(std::span<const double> truth, std::span<const double> estimates);

// Default draw count for XiRandom.
inline constexpr int kDefaultRandomizationSamples = 100;

// Mean prediction over `samples` vectors that equal x on `keep` and take
// every other feature independently (with replacement) from that column of
// `dataset`.
double XiRandom(const TreeEnsemble& ensemble, std::span<const double> x,
                const FeatureSet& keep, const Dataset& dataset, int samples,
                uint64_t seed);

enum class RmseTarget {
  kPrediction,  // compare against the model's prediction on the untouched x
  kLabel,       // compare against the dataset's labels
};

struct RandomizationOptions {
  int samples = kDefaultRandomizationSamples;
  uint64_t seed = 0;
  RmseTarget target = RmseTarget::kPrediction;
  // Required for RmseTarget::kLabel; aligned with dataset rows.
  std::span<const double> labels;
  int threads = 1;
};

// RMSE over the dataset of XiRandom(x, [d] minus the top-k of rankings[i])
// against the chosen target. Row i uses the stream DeriveSeed(seed, i).
double RandomizationRmse(const TreeEnsemble& ensemble, const Dataset& dataset,
                         std::span<const Ranking> rankings, int k,
                         const RandomizationOptions& options = {});

}  // namespace pg2

#endif  // PG2_METRICS_H_
