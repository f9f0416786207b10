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

#ifndef PG2_EXACT_H_
#define PG2_EXACT_H_

#include <cstdint>
#include <span>
#include <vector>

#include "pg2/feature_set.h"
#include "pg2/model.h"
#include "pg2/perturb.h"

namespace pg2 {

// Per-feature interval bookkeeping shared by the nested leaf traversals.
// For feature q the current constraint is lower[q] <= x'_q < upper[q] and
// factor[q] is the probability of that event (an indicator for features that
// are not perturbed).
struct TraversalState {
  explicit TraversalState(int num_features);

  // True when every entry holds its initial value (-inf, +inf, 1).
  bool IsInitial() const;

  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<double> factor;
};

// Joint activation probabilities Pr[X_u = 1 and X_v = 1] for every ordered
// pair of leaves of an ensemble, plus the per-leaf marginals. Leaves carry the
// global ids of TreeEnsemble::leaf_offset.
class LeafPairTable {
 public:
  explicit LeafPairTable(const TreeEnsemble& ensemble);

  int num_leaves() const { return num_leaves_; }
  int tree_of(int leaf) const { return leaf_tree_[leaf]; }
  double leaf_value(int leaf) const { return leaf_value_[leaf]; }

  double joint(int u, int v) const { return joint_[Index(u, v)]; }
  double marginal(int u) const { return marginal_[u]; }

  void set_joint(int u, int v, double p) { joint_[Index(u, v)] = p; }
  void set_marginal(int u, double p) { marginal_[u] = p; }

 private:
  size_t Index(int u, int v) const {
    return static_cast<size_t>(u) * num_leaves_ + v;
  }

  int num_leaves_;
  std::vector<int> leaf_tree_;
  std::vector<double> leaf_value_;
  std::vector<double> joint_;
  std::vector<double> marginal_;
};

struct ExactOptions {
  // Skip subtrees whose running product is exactly zero, and outer leaves
  // whose centred value is zero. Does not change the result.
  bool prune_zero_products = true;
};

// Fills the table with one pre-order double traversal, O(n^2) for n total
// nodes. When `state` is given it is used (and left restored) as the
// traversal's working state; it must have one entry per model feature.
LeafPairTable LeafPairProbabilities(const TreeEnsemble& ensemble,
                                    std::span<const double> x,
                                    const FeatureSet& perturbed,
                                    const PerturbationSpec& spec,
                                    TraversalState* state = nullptr);

// E[(f(x') - f(x))^2] where x' perturbs the features in `perturbed`.
// Streams the pair probabilities without materialising the table. Leaf values
// are centred per tree on the leaf reached by x, which keeps the sum free of
// the c^2 cancellation.
double Pg2Exact(const TreeEnsemble& ensemble, std::span<const double> x,
                const FeatureSet& perturbed, const PerturbationSpec& spec,
                const ExactOptions& options = {});

// The same quantity assembled from a materialised table via
//   c^2 + sum_{u != v} y_u y_v P(u,v) + sum_u P(u) y_u (y_u - 2c),
// with c = f(x).
double Pg2FromLeafPairs(const LeafPairTable& table, double prediction);

// Enumeration limit for Pg2BruteForce (product of support sizes).
inline constexpr uint64_t kBruteForceLimit = 10'000'000;

// Reference value by enumerating every offset combination of the perturbed
// features. Every perturbed feature must have a discrete distribution.
double Pg2BruteForce(const TreeEnsemble& ensemble, std::span<const double> x,
                     const FeatureSet& perturbed, const PerturbationSpec& spec);

}  // namespace pg2

#endif  // PG2_EXACT_H_
