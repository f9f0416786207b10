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

#include "pg2/feature_set.h"

#include <algorithm>
#include <charconv>
#include <string>
#include <utility>

#include "pg2/error.h"

namespace pg2 {

FeatureSet::FeatureSet(std::initializer_list<int> features)
    : FeatureSet(std::vector<int>(features)) {}

FeatureSet::FeatureSet(std::vector<int> features) : indices_(std::move(features)) {
  for (int f : indices_) {
    if (f < 0) Fail(ErrorKind::kInvalidArgument, "negative feature index");
  }
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
}

FeatureSet FeatureSet::All(int num_features) {
  std::vector<int> all(num_features);
  for (int i = 0; i < num_features; ++i) all[i] = i;
  return FeatureSet(std::move(all));
}

bool FeatureSet::Contains(int feature) const {
  return std::binary_search(indices_.begin(), indices_.end(), feature);
}

FeatureSet FeatureSet::With(int feature) const {
  std::vector<int> grown = indices_;
  grown.push_back(feature);
  return FeatureSet(std::move(grown));
}

FeatureSet FeatureSet::Complement(int num_features) const {
  std::vector<int> rest;
  for (int i = 0; i < num_features; ++i) {
    if (!Contains(i)) rest.push_back(i);
  }
  return FeatureSet(std::move(rest));
}

std::vector<bool> FeatureSet::Mask(int num_features) const {
  std::vector<bool> mask(num_features, false);
  for (int f : indices_) {
    if (f < num_features) mask[f] = true;
  }
  return mask;
}

std::string FeatureSet::ToString() const {
  std::string text = "{";
  for (size_t i = 0; i < indices_.size(); ++i) {
    if (i > 0) text += ",";
    text += std::to_string(indices_[i]);
  }
  return text + "}";
}

FeatureSet ParseFeatureSet(const std::string& text) {
  std::vector<int> features;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    std::string token = text.substr(pos, comma - pos);
    token.erase(0, token.find_first_not_of(" \t"));
    token.erase(token.find_last_not_of(" \t") + 1);
    if (!token.empty()) {
      int value = 0;
      const auto [ptr, ec] =
          std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc() || ptr != token.data() + token.size() || value < 0) {
        Fail(ErrorKind::kInvalidArgument, "bad feature index \"" + token + "\"");
      }
      features.push_back(value);
    } else if (comma < text.size()) {
      Fail(ErrorKind::kInvalidArgument, "empty entry in feature list \"" + text + "\"");
    }
    pos = comma + 1;
  }
  return FeatureSet(std::move(features));
}

}  // namespace pg2
