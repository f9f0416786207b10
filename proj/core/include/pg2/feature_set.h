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

#ifndef PG2_FEATURE_SET_H_
#define PG2_FEATURE_SET_H_

#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace pg2 {

// A set of feature indices, kept sorted and duplicate-free.
class FeatureSet {
 public:
  FeatureSet() = default;
  FeatureSet(std::initializer_list<int> features);
  explicit FeatureSet(std::vector<int> features);

  static FeatureSet All(int num_features);

  std::span<const int> indices() const { return indices_; }
  int size() const { return static_cast<int>(indices_.size()); }
  bool empty() const { return indices_.empty(); }
  bool Contains(int feature) const;
  int max() const { return indices_.empty() ? -1 : indices_.back(); }

  FeatureSet With(int feature) const;
  // [0, num_features) minus this set.
  FeatureSet Complement(int num_features) const;
  // Membership mask of length num_features.
  std::vector<bool> Mask(int num_features) const;

  std::string ToString() const;

  bool operator==(const FeatureSet&) const = default;

 private:
  std::vector<int> indices_;
};

// Parses "0,3,5" (whitespace tolerated); the empty string is the empty set.
FeatureSet ParseFeatureSet(const std::string& text);

}  // namespace pg2

#endif  // PG2_FEATURE_SET_H_
