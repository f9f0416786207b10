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

#include "pg2/metrics.h"

#include <cmath>
#include <string>
#include <vector>

#include "pg2/error.h"
#include "pg2/parallel.h"
#include "pg2/random.h"

namespace pg2 {
namespace {

void CheckAligned(const Dataset& dataset, size_t count, const char* what) {
  if (static_cast<int>(count) != dataset.size()) {
    Fail(ErrorKind::kInvalidArgument,
         std::string(what) + " has " + std::to_string(count) +
             " entries but the dataset has " + std::to_string(dataset.size()) +
             " rows");
  }
}

}  // namespace

double Pgi2(const TreeEnsemble& ensemble, std::span<const double> x,
            const Ranking& ranking, const PerturbationSpec& spec,
            const ExactOptions& options) {
  const int d = ranking.size();
  if (d != ensemble.num_features()) {
    Fail(ErrorKind::kInvalidArgument, "ranking dimension differs from the model's");
  }
  if (d == 0) return 0.0;
  double sum = 0.0;
  for (int k = 1; k <= d; ++k) {
    sum += Pg2Exact(ensemble, x, ranking.Prefix(k), spec, options);
  }
  return sum / d;
}

double MeanPgi2(const TreeEnsemble& ensemble, const Dataset& dataset,
                std::span<const Ranking> rankings, const PerturbationSpec& spec,
                int threads) {
  CheckAligned(dataset, rankings.size(), "ranking list");
  if (dataset.empty()) Fail(ErrorKind::kInvalidArgument, "empty dataset");
  std::vector<double> values(dataset.size());
  ParallelFor(dataset.size(), threads, [&](int i) {
    values[i] = Pgi2(ensemble, dataset.row(i), rankings[i], spec);
  });
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / dataset.size();
}

double Nmae(std::span<const double> truth, std::span<const double> estimates) {
  if (truth.size() != estimates.size()) {
    Fail(ErrorKind::kInvalidArgument, "NMAE inputs differ in length");
  }
  if (truth.empty()) Fail(ErrorKind::kInvalidArgument, "NMAE of an empty sample");
  double error = 0.0;
  double norm = 0.0;
  for (size_t j = 0; j < truth.size(); ++j) {
    error += std::fabs(truth[j] - estimates[j]);
    norm += std::fabs(truth[j]);
  }
  if (norm == 0.0) {
    Fail(ErrorKind::kNumericDomain,
         "NMAE is undefined: every true value is zero");
  }
  return error / norm;
}

double XiRandom(const TreeEnsemble& ensemble, std::span<const double> x,
                const FeatureSet& keep, const Dataset& dataset, int samples,
                uint64_t seed) {
  ensemble.CheckInput(x);
  if (samples < 1) Fail(ErrorKind::kInvalidArgument, "samples must be at least 1");
  if (dataset.num_features() != ensemble.num_features()) {
    Fail(ErrorKind::kInvalidArgument, "dataset dimension differs from the model's");
  }
  const FeatureSet randomized = keep.Complement(ensemble.num_features());
  if (randomized.empty()) return ensemble.PredictUnchecked(x);
  if (dataset.empty()) Fail(ErrorKind::kInvalidArgument, "empty dataset");
  Rng rng(seed);
  std::vector<double> sample(x.begin(), x.end());
  double sum = 0.0;
  for (int s = 0; s < samples; ++s) {
    for (int j : randomized.indices()) {
      sample[j] = dataset.row(static_cast<int>(UniformIndex(rng, dataset.size())))[j];
    }
    sum += ensemble.PredictUnchecked(sample);
  }
  return sum / samples;
}

double RandomizationRmse(const TreeEnsemble& ensemble, const Dataset& dataset,
                         std::span<const Ranking> rankings, int k,
                         const RandomizationOptions& options) {
  CheckAligned(dataset, rankings.size(), "ranking list");
  if (dataset.empty()) Fail(ErrorKind::kInvalidArgument, "empty dataset");
  if (options.target == RmseTarget::kLabel) {
    CheckAligned(dataset, options.labels.size(), "label column");
  }
  std::vector<double> squared(dataset.size());
  ParallelFor(dataset.size(), options.threads, [&](int i) {
    const FeatureVector& x = dataset.row(i);
    const FeatureSet keep = rankings[i].Prefix(k).Complement(ensemble.num_features());
    const double xi = XiRandom(ensemble, x, keep, dataset, options.samples,
                               DeriveSeed(options.seed, static_cast<uint64_t>(i)));
    const double target = options.target == RmseTarget::kLabel
                              ? options.labels[i]
                              : ensemble.PredictUnchecked(x);
    squared[i] = (xi - target) * (xi - target);
  });
  double sum = 0.0;
  for (double v : squared) sum += v;
  return std::sqrt(sum / dataset.size());
}

}  // namespace pg2
