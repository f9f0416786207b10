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

#ifndef PG2_MODEL_H_
#define PG2_MODEL_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pg2 {

// Dense feature vector. All entries must be finite; there is no missing-value
// branch in the routing rule.
using FeatureVector = std::vector<double>;

// A node of a binary decision tree, stored in a flat per-tree array.
// Internal nodes route x[feature] < threshold to `left`, everything else
// (including ties) to `right`. Leaves have left == right == -1.
struct Node {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;

  bool IsLeaf() const { return left < 0; }
};

class Tree {
 public:
  // Validates that `nodes` forms a rooted binary tree with node 0 as the root:
  // every non-root node has exactly one parent and every node is reachable.
  explicit Tree(std::vector<Node> nodes);

  static Tree Leaf(double value);
  static Tree Stump(int feature, double threshold, double left_value,
                    double right_value);

  const Node& node(int index) const { return nodes_[index]; }
  std::span<const Node> nodes() const { return nodes_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  int leaf_count() const { return leaf_count_; }
  // Number of edges on the longest root-leaf path.
  int depth() const { return depth_; }
  // Dense 0-based numbering of the leaves in pre-order; -1 for internal nodes.
  int leaf_index(int node) const { return leaf_index_[node]; }
  // Largest feature index referenced, or -1 for a single leaf.
  int max_feature() const { return max_feature_; }

  // Index of the leaf reached by `x`. No bounds checks.
  int Route(std::span<const double> x) const;
  double Predict(std::span<const double> x) const {
    return nodes_[Route(x)].value;
  }

  bool operator==(const Tree& other) const;

 private:
  std::vector<Node> nodes_;
  std::vector<int> leaf_index_;
  int leaf_count_ = 0;
  int depth_ = 0;
  int max_feature_ = -1;
};

// Additive ensemble: f(x) is the sum of the outputs of its trees.
// Immutable after construction.
class TreeEnsemble {
 public:
  TreeEnsemble(std::vector<Tree> trees, int num_features);

  std::span<const Tree> trees() const { return trees_; }
  const Tree& tree(int i) const { return trees_[i]; }
  int num_trees() const { return static_cast<int>(trees_.size()); }
  int num_features() const { return num_features_; }
  int node_count() const { return node_count_; }
  int leaf_count() const { return leaf_count_; }
  // Global id of the first leaf of tree `i`; leaves of tree i occupy
  // [leaf_offset(i), leaf_offset(i) + tree(i).leaf_count()).
  int leaf_offset(int i) const { return leaf_offset_[i]; }

  // Throws unless x has num_features() finite entries.
  void CheckInput(std::span<const double> x) const;

  double Predict(std::span<const double> x) const;
  // Skips CheckInput; for inner loops over already validated vectors.
  double PredictUnchecked(std::span<const double> x) const;

  // True if some internal node splits on `feature`.
  bool UsesFeature(int feature) const;

  bool operator==(const TreeEnsemble& other) const = default;

 private:
  std::vector<Tree> trees_;
  int num_features_ = 0;
  int node_count_ = 0;
  int leaf_count_ = 0;
  std::vector<int> leaf_offset_;
  std::vector<bool> used_features_;
};

enum class ModelFormat { kCanonical, kXgboostDump };

ModelFormat ParseModelFormat(std::string_view name);

// Canonical JSON: {"num_features": d, "trees": [node, ...]} where node is
// {"feature", "threshold", "left", "right"} or {"value"}.
TreeEnsemble ParseCanonicalModel(std::string_view json_text);
std::string ToCanonicalJson(const TreeEnsemble& ensemble);

struct XgboostImportOptions {
  // Feature count; 0 means one past the largest referenced feature.
  int num_features = 0;
  // Maps non-"f<N>" split names to indices. Empty means "f<N>" names only.
  std::vector<std::string> feature_names;
  // Global bias, appended as one extra single-leaf tree when non-zero.
  double base_score = 0.0;
};

// Array of per-tree objects as produced by XGBoost's JSON text dump. The
// "yes" child is the x < split_condition branch.
TreeEnsemble ParseXgboostDump(std::string_view json_text,
                              const XgboostImportOptions& options = {});

TreeEnsemble LoadEnsemble(const std::string& path, ModelFormat format,
                          const XgboostImportOptions& xgboost_options = {});
void SaveEnsemble(const TreeEnsemble& ensemble, const std::string& path);

// Whole-file read; throws Error(kFormat) when the file cannot be opened.
std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view contents);

}  // namespace pg2

#endif  // PG2_MODEL_H_
