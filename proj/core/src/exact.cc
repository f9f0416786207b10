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

#include "pg2/exact.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pg2/error.h"

namespace pg2 {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Relative slack under which a negative sum is treated as rounding noise.
constexpr double kNegativeSlack = 1e-9;

void CheckQuery(const TreeEnsemble& ensemble, std::span<const double> x,
                const FeatureSet& perturbed, const PerturbationSpec& spec) {
  ensemble.CheckInput(x);
  for (int q : perturbed.indices()) {
    if (q >= ensemble.num_features()) {
      Fail(ErrorKind::kInvalidArgument,
           "perturbed feature " + std::to_string(q) + " is out of range");
    }
    if (!spec.Covers(q)) {
      Fail(ErrorKind::kInvalidArgument,
           "perturbed feature " + std::to_string(q) + " has no distribution");
    }
  }
}

double ClampNonNegative(double value, double scale) {
  if (value >= 0.0) return value;
  if (-value <= kNegativeSlack * scale) return 0.0;
  Fail(ErrorKind::kNumericDomain,
       "squared gap evaluated to " + std::to_string(value) +
           ", beyond rounding slack");
}

// Runs the nested pre-order traversals. For every leaf u (outer) and every
// leaf v of every tree (inner), the running product equals P(u, v) when the
// inner traversal reaches v. Each step down one edge changes the interval of
// exactly one feature, so the product is updated by replacing one factor.
//
// Visitor interface:
//   bool BeginOuter(int u, double marginal)  -- false skips the inner pass
//   void Pair(int u, int v, double joint)
//   void EndOuter(int u)
class PairTraversal {
 public:
  PairTraversal(const TreeEnsemble& ensemble, std::span<const double> x,
                const FeatureSet& perturbed, const PerturbationSpec& spec,
                TraversalState& state, bool prune)
      : ensemble_(ensemble), x_(x), state_(state), prune_(prune) {
    dist_.assign(ensemble.num_features(), nullptr);
    for (int q : perturbed.indices()) dist_[q] = &spec.For(q);
  }

  template <typename Visitor>
  void Run(Visitor& visitor) {
    for (int t = 0; t < ensemble_.num_trees(); ++t) {
      Outer(t, 0, 1.0, visitor);
    }
  }

 private:
  struct Saved {
    double lower;
    double upper;
    double factor;
  };

  // Narrows the interval of node.feature to the chosen child and returns the
  // running product for that child.
  double Descend(const Node& node, bool to_left, double prod, Saved& saved) {
    const int q = node.feature;
    double& lower = state_.lower[q];
    double& upper = state_.upper[q];
    double& factor = state_.factor[q];
    saved = {lower, upper, factor};
    if (to_left) {
      upper = std::min(upper, node.threshold);
    } else {
      lower = std::max(lower, node.threshold);
    }
    if (dist_[q] != nullptr) {
      factor = dist_[q]->IntervalProbability(x_[q], lower, upper);
    } else {
      factor = (lower <= x_[q] && x_[q] < upper) ? 1.0 : 0.0;
    }
    if (saved.factor != 0.0) return prod / saved.factor * factor;
    return RecomputeProduct();
  }

  void Restore(int q, const Saved& saved) {
    state_.lower[q] = saved.lower;
    state_.upper[q] = saved.upper;
    state_.factor[q] = saved.factor;
  }

  // Division fallback when the replaced factor was zero. Untouched features
  // hold factor 1, so the full product equals the product over the path.
  double RecomputeProduct() const {
    double prod = 1.0;
    for (double f : state_.factor) prod *= f;
    return prod;
  }

  template <typename Visitor>
  void Outer(int tree_index, int node_index, double prod, Visitor& visitor) {
    if (prune_ && prod == 0.0) return;
    const Tree& tree = ensemble_.tree(tree_index);
    const Node& node = tree.node(node_index);
    if (node.IsLeaf()) {
      const int u = ensemble_.leaf_offset(tree_index) + tree.leaf_index(node_index);
      if (visitor.BeginOuter(u, prod)) {
        for (int t = 0; t < ensemble_.num_trees(); ++t) {
          Inner(t, 0, prod, u, visitor);
        }
      }
      visitor.EndOuter(u);
      return;
    }
    Saved saved;
    Outer(tree_index, node.left, Descend(node, true, prod, saved), visitor);
    Restore(node.feature, saved);
    Outer(tree_index, node.right, Descend(node, false, prod, saved), visitor);
    Restore(node.feature, saved);
  }

  template <typename Visitor>
  void Inner(int tree_index, int node_index, double prod, int u,
             Visitor& visitor) {
    if (prune_ && prod == 0.0) return;
    const Tree& tree = ensemble_.tree(tree_index);
    const Node& node = tree.node(node_index);
    if (node.IsLeaf()) {
      visitor.Pair(u, ensemble_.leaf_offset(tree_index) + tree.leaf_index(node_index),
                   prod);
      return;
    }
    Saved saved;
    Inner(tree_index, node.left, Descend(node, true, prod, saved), u, visitor);
    Restore(node.feature, saved);
    Inner(tree_index, node.right, Descend(node, false, prod, saved), u, visitor);
    Restore(node.feature, saved);
  }

  const TreeEnsemble& ensemble_;
  std::span<const double> x_;
  std::vector<const Distribution*> dist_;
  TraversalState& state_;
  bool prune_;
};

class TableVisitor {
 public:
  explicit TableVisitor(LeafPairTable& table) : table_(table) {}

  bool BeginOuter(int u, double marginal) {
    table_.set_marginal(u, marginal);
    return true;
  }
  void Pair(int u, int v, double joint) { table_.set_joint(u, v, joint); }
  void EndOuter(int) {}

 private:
  LeafPairTable& table_;
};

// Accumulates sum_{u,v} z_u z_v P(u, v) with z the centred leaf values. The
// diagonal P(u, u) is the marginal of u, so this is E[(f(x') - f(x))^2].
class CenteredGapVisitor {
 public:
  CenteredGapVisitor(std::vector<double> centered, bool skip_zero)
      : centered_(std::move(centered)), skip_zero_(skip_zero) {}

  bool BeginOuter(int u, double) {
    inner_ = 0.0;
    inner_abs_ = 0.0;
    return !(skip_zero_ && centered_[u] == 0.0);
  }
  void Pair(int, int v, double joint) {
    const double term = centered_[v] * joint;
    inner_ += term;
    inner_abs_ += std::fabs(term);
  }
  void EndOuter(int u) {
    total_ += centered_[u] * inner_;
    total_abs_ += std::fabs(centered_[u]) * inner_abs_;
  }

  double total() const { return total_; }
  double total_abs() const { return total_abs_; }

 private:
  std::vector<double> centered_;
  bool skip_zero_;
  double inner_ = 0.0;
  double inner_abs_ = 0.0;
  double total_ = 0.0;
  double total_abs_ = 0.0;
};

}  // namespace

TraversalState::TraversalState(int num_features)
    : lower(num_features, -kInf), upper(num_features, kInf), factor(num_features, 1.0) {}

bool TraversalState::IsInitial() const {
  for (size_t q = 0; q < factor.size(); ++q) {
    if (lower[q] != -kInf || upper[q] != kInf || factor[q] != 1.0) return false;
  }
  return true;
}

LeafPairTable::LeafPairTable(const TreeEnsemble& ensemble)
    : num_leaves_(ensemble.leaf_count()),
      joint_(static_cast<size_t>(num_leaves_) * num_leaves_, 0.0),
      marginal_(num_leaves_, 0.0) {
  leaf_tree_.reserve(num_leaves_);
  leaf_value_.reserve(num_leaves_);
  for (int t = 0; t < ensemble.num_trees(); ++t) {
    const Tree& tree = ensemble.tree(t);
    // Leaf ids follow the pre-order numbering of Tree::leaf_index.
    std::vector<double> values(tree.leaf_count());
    for (int i = 0; i < tree.size(); ++i) {
      if (tree.node(i).IsLeaf()) values[tree.leaf_index(i)] = tree.node(i).value;
    }
    for (double value : values) {
      leaf_tree_.push_back(t);
      leaf_value_.push_back(value);
    }
  }
}

LeafPairTable LeafPairProbabilities(const TreeEnsemble& ensemble,
                                    std::span<const double> x,
                                    const FeatureSet& perturbed,
                                    const PerturbationSpec& spec,
                                    TraversalState* state) {
  CheckQuery(ensemble, x, perturbed, spec);
  std::optional<TraversalState> local;
  if (state == nullptr) {
    state = &local.emplace(ensemble.num_features());
  } else if (static_cast<int>(state->factor.size()) != ensemble.num_features()) {
    Fail(ErrorKind::kInvalidArgument, "traversal state has the wrong dimension");
  }
  LeafPairTable table(ensemble);
  TableVisitor visitor(table);
  PairTraversal(ensemble, x, perturbed, spec, *state, /*prune=*/false).Run(visitor);
  return table;
}

double Pg2Exact(const TreeEnsemble& ensemble, std::span<const double> x,
                const FeatureSet& perturbed, const PerturbationSpec& spec,
                const ExactOptions& options) {
  CheckQuery(ensemble, x, perturbed, spec);
  if (perturbed.empty()) return 0.0;

  std::vector<double> centered(ensemble.leaf_count());
  for (int t = 0; t < ensemble.num_trees(); ++t) {
    const Tree& tree = ensemble.tree(t);
    const double reached = tree.Predict(x);
    for (int i = 0; i < tree.size(); ++i) {
      const Node& node = tree.node(i);
      if (node.IsLeaf()) {
        centered[ensemble.leaf_offset(t) + tree.leaf_index(i)] = node.value - reached;
      }
    }
  }
  TraversalState state(ensemble.num_features());
  CenteredGapVisitor visitor(std::move(centered), options.prune_zero_products);
  PairTraversal(ensemble, x, perturbed, spec, state, options.prune_zero_products)
      .Run(visitor);
  return ClampNonNegative(visitor.total(), visitor.total_abs());
}

double Pg2FromLeafPairs(const LeafPairTable& table, double prediction) {
  const double c = prediction;
  const int n = table.num_leaves();
  double cross = 0.0;
  double diagonal = 0.0;
  double scale = c * c;
  for (int u = 0; u < n; ++u) {
    const double yu = table.leaf_value(u);
    for (int v = 0; v < n; ++v) {
      if (v == u) continue;
      const double term = yu * table.leaf_value(v) * table.joint(u, v);
      cross += term;
      scale += std::fabs(term);
    }
    const double term = table.marginal(u) * yu * (yu - 2.0 * c);
    diagonal += term;
    scale += std::fabs(term);
  }
  return ClampNonNegative(c * c + cross + diagonal, scale);
}

double Pg2BruteForce(const TreeEnsemble& ensemble, std::span<const double> x,
                     const FeatureSet& perturbed, const PerturbationSpec& spec) {
  CheckQuery(ensemble, x, perturbed, spec);
  const auto features = perturbed.indices();
  std::vector<const Distribution*> dists;
  uint64_t combinations = 1;
  for (int q : features) {
    const Distribution& dist = spec.For(q);
    if (dist.kind() != Distribution::Kind::kDiscrete) {
      Fail(ErrorKind::kInvalidArgument,
           "brute force needs discrete distributions; feature " +
               std::to_string(q) + " is " + dist.ToString());
    }
    dists.push_back(&dist);
    combinations *= dist.offsets().size();
    if (combinations > kBruteForceLimit) {
      Fail(ErrorKind::kCapacity, "brute-force enumeration exceeds " +
                                     std::to_string(kBruteForceLimit) +
                                     " combinations");
    }
  }
  const double c = ensemble.PredictUnchecked(x);
  std::vector<double> perturbed_x(x.begin(), x.end());
  std::vector<size_t> digit(features.size(), 0);
  double total = 0.0;
  for (uint64_t k = 0; k < combinations; ++k) {
    double weight = 1.0;
    for (size_t j = 0; j < features.size(); ++j) {
      perturbed_x[features[j]] = x[features[j]] + dists[j]->offsets()[digit[j]];
      weight *= dists[j]->probabilities()[digit[j]];
    }
    const double gap = ensemble.PredictUnchecked(perturbed_x) - c;
    total += weight * gap * gap;
    // Odometer increment.
    for (size_t j = 0; j < digit.size(); ++j) {
      if (++digit[j] < dists[j]->offsets().size()) break;
      digit[j] = 0;
    }
  }
  return total;
}

}  // namespace pg2
