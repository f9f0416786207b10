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

#ifndef PG2_SYNTHETIC_H_
#define PG2_SYNTHETIC_H_

#include <cstdint>

#include "pg2/model.h"
#include "pg2/random.h"

namespace pg2 {

// Random ensembles over standardized-looking inputs: thresholds ~ N(0, 1)
// scaled by `threshold_scale`, leaf values ~ N(0, leaf_scale^2).
struct SyntheticEnsembleOptions {
  int num_trees = 10;
  int max_depth = 4;
  int num_features = 8;
  // Probability that a node above max_depth splits. 1 gives perfect trees.
  double split_probability = 1.0;
  double threshold_scale = 1.0;
  double leaf_scale = 1.0;
};

TreeEnsemble RandomEnsemble(const SyntheticEnsembleOptions& options, Rng& rng);

// A point with i.i.d. N(0, 1) entries.
FeatureVector RandomPoint(int num_features, Rng& rng);

}  // namespace pg2

#endif  // PG2_SYNTHETIC_H_
