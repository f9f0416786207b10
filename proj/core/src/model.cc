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

#include "pg2/model.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.h"
#include "pg2/error.h"

namespace pg2 {
namespace {

using Json = nlohmann::json;

[[noreturn]] void ValidationError(const std::string& message) {
  Fail(ErrorKind::kValidation, message);
}

[[noreturn]] void FormatError(const std::string& message) {
  Fail(ErrorKind::kFormat, message);
}

Json ParseJson(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    FormatError(std::string("JSON parse error: ") + e.what());
  }
}

double GetNumber(const Json& object, const char* key, const std::string& where) {
  const auto it = object.find(key);
  if (it == object.end() || !it->is_number()) {
    FormatError(where + ": expected numeric field \"" + key + "\"");
  }
  return it->get<double>();
}

int GetInt(const Json& object, const char* key, const std::string& where) {
  const auto it = object.find(key);
  if (it == object.end() || !it->is_number_integer()) {
    FormatError(where + ": expected integer field \"" + key + "\"");
  }
  return it->get<int>();
}

// Appends the subtree rooted at `json` to `nodes` in pre-order and returns the
// index of its root.
int AppendCanonicalNode(const Json& json, const std::string& where,
                        std::vector<Node>& nodes) {
  if (!json.is_object()) FormatError(where + ": node must be an object");
  const bool has_value = json.contains("value");
  const bool has_split = json.contains("feature") || json.contains("threshold") ||
                         json.contains("left") || json.contains("right");
  if (has_value == has_split) {
    ValidationError(where +
                    ": node must be either a leaf {value} or a split "
                    "{feature, threshold, left, right}");
  }
  const int index = static_cast<int>(nodes.size());
  nodes.emplace_back();
  if (has_value) {
    nodes[index].value = GetNumber(json, "value", where);
    return index;
  }
  if (!json.contains("left") || !json.contains("right")) {
    ValidationError(where + ": split node needs both \"left\" and \"right\"");
  }
  nodes[index].feature = GetInt(json, "feature", where);
  nodes[index].threshold = GetNumber(json, "threshold", where);
  const int left = AppendCanonicalNode(json["left"], where + ".left", nodes);
  const int right = AppendCanonicalNode(json["right"], where + ".right", nodes);
  nodes[index].left = left;
  nodes[index].right = right;
  return index;
}

Json CanonicalNodeToJson(const Tree& tree, int index) {
  const Node& node = tree.node(index);
  if (node.IsLeaf()) return Json{{"value", node.value}};
  Json json;
  json["feature"] = node.feature;
  json["threshold"] = node.threshold;
  json["left"] = CanonicalNodeToJson(tree, node.left);
  json["right"] = CanonicalNodeToJson(tree, node.right);
  return json;
}

int ResolveXgboostFeature(const std::string& split,
                          const std::vector<std::string>& names,
                          const std::string& where) {
  for (size_t i = 0; i < names.size(); ++i) {
    if (names[i] == split) return static_cast<int>(i);
  }
  if (split.size() >= 2 && split[0] == 'f') {
    int value = 0;
    const char* begin = split.data() + 1;
    const char* end = split.data() + split.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec == std::errc() && ptr == end) return value;
  }
  FormatError(where + ": unknown split feature \"" + split + "\"");
}

struct XgboostNode {
  const Json* json;
  int nodeid;
};

Tree ConvertXgboostTree(const Json& root, const XgboostImportOptions& options,
                        const std::string& where) {
  // Index every node by its "nodeid"; the dump nests children in "children".
  std::unordered_map<int, const Json*> by_id;
  std::vector<const Json*> stack = {&root};
  while (!stack.empty()) {
    const Json* json = stack.back();
    stack.pop_back();
    if (!json->is_object()) FormatError(where + ": node must be an object");
    const int id = GetInt(*json, "nodeid", where);
    if (!by_id.emplace(id, json).second) {
      ValidationError(where + ": duplicate nodeid " + std::to_string(id));
    }
    if (const auto it = json->find("children"); it != json->end()) {
      if (!it->is_array()) FormatError(where + ": \"children\" must be an array");
      for (const Json& child : *it) stack.push_back(&child);
    }
  }

  std::vector<Node> nodes;
  nodes.reserve(by_id.size());
  // Pre-order rebuild: returns the flat index of node `id`.
  auto build = [&](auto&& self, int id, const std::string& path) -> int {
    const auto it = by_id.find(id);
    if (it == by_id.end()) {
      FormatError(path + ": reference to missing nodeid " + std::to_string(id));
    }
    const Json& json = *it->second;
    const std::string here = where + " nodeid " + std::to_string(id);
    const int index = static_cast<int>(nodes.size());
    nodes.emplace_back();
    if (json.contains("leaf")) {
      if (json.contains("split")) {
        ValidationError(here + ": node has both \"leaf\" and \"split\"");
      }
      nodes[index].value = GetNumber(json, "leaf", here);
      return index;
    }
    const auto split = json.find("split");
    if (split == json.end()) FormatError(here + ": expected \"split\" or \"leaf\"");
    const std::string name = split->is_string()
                                 ? split->get<std::string>()
                                 : "f" + std::to_string(split->get<int>());
    const int yes = GetInt(json, "yes", here);
    const int no = GetInt(json, "no", here);
    if (yes == no) ValidationError(here + ": \"yes\" and \"no\" are the same node");
    if (const auto missing = json.find("missing"); missing != json.end()) {
      const int missing_id = missing->get<int>();
      if (missing_id != yes && missing_id != no) {
        ValidationError(here + ": \"missing\" branch " + std::to_string(missing_id) +
                        " is neither the yes nor the no child");
      }
    }
    if (const auto children = json.find("children");
        children == json.end() || children->size() != 2) {
      ValidationError(here + ": split node must have exactly two children");
    }
    nodes[index].feature = ResolveXgboostFeature(name, options.feature_names, here);
    nodes[index].threshold = GetNumber(json, "split_condition", here);
    const int left = self(self, yes, here);
    const int right = self(self, no, here);
    nodes[index].left = left;
    nodes[index].right = right;
    return index;
  };
  build(build, GetInt(root, "nodeid", where), where);
  if (nodes.size() != by_id.size()) {
    ValidationError(where + ": tree contains nodes unreachable from the root");
  }
  return Tree(std::move(nodes));
}

}  // namespace

Tree::Tree(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) ValidationError("tree has no nodes");
  const int n = size();
  std::vector<int> parent_count(n, 0);
  for (int i = 0; i < n; ++i) {
    const Node& node = nodes_[i];
    if ((node.left < 0) != (node.right < 0)) {
      ValidationError("node " + std::to_string(i) + " has exactly one child");
    }
    if (node.IsLeaf()) {
      if (!std::isfinite(node.value)) {
        ValidationError("leaf " + std::to_string(i) + " has a non-finite value");
      }
      continue;
    }
    if (node.left >= n || node.right >= n) {
      ValidationError("node " + std::to_string(i) + " has an out-of-range child");
    }
    if (node.feature < 0) {
      ValidationError("node " + std::to_string(i) + " has a negative feature index");
    }
    if (!std::isfinite(node.threshold)) {
      ValidationError("node " + std::to_string(i) + " has a non-finite threshold");
    }
    ++parent_count[node.left];
    ++parent_count[node.right];
    max_feature_ = std::max(max_feature_, node.feature);
  }
  if (parent_count[0] != 0) ValidationError("root node has a parent");
  for (int i = 1; i < n; ++i) {
    if (parent_count[i] != 1) {
      ValidationError("node " + std::to_string(i) + " has " +
                      std::to_string(parent_count[i]) + " parents");
    }
  }
  // With one parent per non-root node, reachability of all n nodes from the
  // root rules out cycles.
  leaf_index_.assign(n, -1);
  std::vector<std::pair<int, int>> stack = {{0, 0}};
  int visited = 0;
  while (!stack.empty()) {
    const auto [index, depth] = stack.back();
    stack.pop_back();
    ++visited;
    depth_ = std::max(depth_, depth);
    const Node& node = nodes_[index];
    if (node.IsLeaf()) {
      leaf_index_[index] = leaf_count_++;
    } else {
      // Right pushed first so the left subtree is numbered first.
      stack.emplace_back(node.right, depth + 1);
      stack.emplace_back(node.left, depth + 1);
    }
  }
  if (visited != n) ValidationError("tree contains nodes unreachable from the root");
}

Tree Tree::Leaf(double value) {
  Node leaf;
  leaf.value = value;
  return Tree({leaf});
}

Tree Tree::Stump(int feature, double threshold, double left_value,
                 double right_value) {
  Node root;
  root.feature = feature;
  root.threshold = threshold;
  root.left = 1;
  root.right = 2;
  Node left;
  left.value = left_value;
  Node right;
  right.value = right_value;
  return Tree({root, left, right});
}

int Tree::Route(std::span<const double> x) const {
  int index = 0;
  while (!nodes_[index].IsLeaf()) {
    const Node& node = nodes_[index];
    index = x[node.feature] < node.threshold ? node.left : node.right;
  }
  return index;
}

bool Tree::operator==(const Tree& other) const {
  if (nodes_.size() != other.nodes_.size()) return false;
  for (size_t i = 0; i < nodes_.size(); ++i) {
    const Node& a = nodes_[i];
    const Node& b = other.nodes_[i];
    if (a.IsLeaf() != b.IsLeaf()) return false;
    if (a.IsLeaf()) {
      if (a.value != b.value) return false;
    } else if (a.feature != b.feature || a.threshold != b.threshold ||
               a.left != b.left || a.right != b.right) {
      return false;
    }
  }
  return true;
}

TreeEnsemble::TreeEnsemble(std::vector<Tree> trees, int num_features)
    : trees_(std::move(trees)), num_features_(num_features) {
  if (num_features_ < 0) ValidationError("negative feature count");
  used_features_.assign(num_features_, false);
  leaf_offset_.reserve(trees_.size());
  for (size_t t = 0; t < trees_.size(); ++t) {
    const Tree& tree = trees_[t];
    if (tree.max_feature() >= num_features_) {
      ValidationError("tree " + std::to_string(t) + " references feature " +
                      std::to_string(tree.max_feature()) + " but the model has " +
                      std::to_string(num_features_) + " features");
    }
    for (const Node& node : tree.nodes()) {
      if (!node.IsLeaf()) used_features_[node.feature] = true;
    }
    leaf_offset_.push_back(leaf_count_);
    node_count_ += tree.size();
    leaf_count_ += tree.leaf_count();
  }
}

void TreeEnsemble::CheckInput(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != num_features_) {
    Fail(ErrorKind::kInvalidArgument,
         "feature vector has " + std::to_string(x.size()) +
             " entries, model expects " + std::to_string(num_features_));
  }
  for (size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) {
      Fail(ErrorKind::kInvalidArgument,
           "feature " + std::to_string(i) + " is not finite");
    }
  }
}

double TreeEnsemble::Predict(std::span<const double> x) const {
  CheckInput(x);
  return PredictUnchecked(x);
}

double TreeEnsemble::PredictUnchecked(std::span<const double> x) const {
  double sum = 0.0;
  for (const Tree& tree : trees_) sum += tree.Predict(x);
  return sum;
}

bool TreeEnsemble::UsesFeature(int feature) const {
  return feature >= 0 && feature < num_features_ && used_features_[feature];
}

ModelFormat ParseModelFormat(std::string_view name) {
  if (name == "canonical") return ModelFormat::kCanonical;
  if (name == "xgboost-dump" || name == "xgboost") return ModelFormat::kXgboostDump;
  Fail(ErrorKind::kInvalidArgument, "unknown model format \"" + std::string(name) + "\"");
}

TreeEnsemble ParseCanonicalModel(std::string_view json_text) {
  const Json root = ParseJson(json_text);
  if (!root.is_object()) FormatError("model: top level must be an object");
  const int num_features = GetInt(root, "num_features", "model");
  const auto trees_json = root.find("trees");
  if (trees_json == root.end() || !trees_json->is_array()) {
    FormatError("model: expected array field \"trees\"");
  }
  std::vector<Tree> trees;
  trees.reserve(trees_json->size());
  for (size_t t = 0; t < trees_json->size(); ++t) {
    std::vector<Node> nodes;
    AppendCanonicalNode((*trees_json)[t], "trees[" + std::to_string(t) + "]", nodes);
    trees.emplace_back(std::move(nodes));
  }
  return TreeEnsemble(std::move(trees), num_features);
}

std::string ToCanonicalJson(const TreeEnsemble& ensemble) {
  Json root;
  root["num_features"] = ensemble.num_features();
  Json trees = Json::array();
  for (const Tree& tree : ensemble.trees()) {
    trees.push_back(CanonicalNodeToJson(tree, 0));
  }
  root["trees"] = std::move(trees);
  return root.dump(1) + "\n";
}

TreeEnsemble ParseXgboostDump(std::string_view json_text,
                              const XgboostImportOptions& options) {
  const Json root = ParseJson(json_text);
  if (!root.is_array()) FormatError("xgboost dump: top level must be an array");
  std::vector<Tree> trees;
  trees.reserve(root.size() + 1);
  int max_feature = -1;
  for (size_t t = 0; t < root.size(); ++t) {
    trees.push_back(
        ConvertXgboostTree(root[t], options, "booster[" + std::to_string(t) + "]"));
    max_feature = std::max(max_feature, trees.back().max_feature());
  }
  if (options.base_score != 0.0) trees.push_back(Tree::Leaf(options.base_score));
  int num_features = options.num_features;
  if (num_features == 0) {
    num_features = options.feature_names.empty()
                       ? max_feature + 1
                       : static_cast<int>(options.feature_names.size());
  }
  return TreeEnsemble(std::move(trees), num_features);
}

TreeEnsemble LoadEnsemble(const std::string& path, ModelFormat format,
                          const XgboostImportOptions& xgboost_options) {
  const std::string text = ReadFile(path);
  try {
    return format == ModelFormat::kCanonical
               ? ParseCanonicalModel(text)
               : ParseXgboostDump(text, xgboost_options);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

void SaveEnsemble(const TreeEnsemble& ensemble, const std::string& path) {
  WriteFile(path, ToCanonicalJson(ensemble));
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) FormatError("cannot open \"" + path + "\"");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorKind::kInvalidArgument, "cannot write \"" + path + "\"");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) Fail(ErrorKind::kInvalidArgument, "failed writing \"" + path + "\"");
}

}  // namespace pg2
