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

#include "pg2/synthetic.h"

#include <utility>
#include <vector>

#include "pg2/perturb.h"

namespace pg2 {
namespace {

double StandardNormal(Rng& rng) { return NormalQuantile(UniformOpen01(rng)); }

int AppendRandomNode(const SyntheticEnsembleOptions& options, int depth, Rng& rng,
                     std::vector<Node>& nodes) {
  const int index = static_cast<int>(nodes.size());
  nodes.emplace_back();
  const bool split = depth < options.max_depth &&
                     (depth == 0 || UniformOpen01(rng) < options.split_probability);
  if (!split) {
    nodes[index].value = options.leaf_scale * StandardNormal(rng);
    return index;
  }
  nodes[index].feature =
      static_cast<int>(UniformIndex(rng, static_cast<uint64_t>(options.num_features)));
  nodes[index].threshold = options.threshold_scale * StandardNormal(rng);
  const int left = AppendRandomNode(options, depth + 1, rng, nodes);
  const int right = AppendRandomNode(options, depth + 1, rng, nodes);
  nodes[index].left = left;
  nodes[index].right = right;
  return index;
}

}  // namespace

TreeEnsemble RandomEnsemble(const SyntheticEnsembleOptions& options, Rng& rng) {
  std::vector<Tree> trees;
  trees.reserve(options.num_trees);
  for (int t = 0; t < options.num_trees; ++t) {
    std::vector<Node> nodes;
    AppendRandomNode(options, 0, rng, nodes);
    trees.emplace_back(std::move(nodes));
  }
  return TreeEnsemble(std::move(trees), options.num_features);
}

FeatureVector RandomPoint(int num_features, Rng& rng) {
  FeatureVector x(num_features);
  for (double& v : x) v = StandardNormal(rng);
  return x;
}

}  // namespace pg2
