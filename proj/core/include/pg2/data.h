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

#ifndef PG2_DATA_H_
#define PG2_DATA_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pg2/feature_set.h"
#include "pg2/model.h"

namespace pg2 {

// Numeric instances with named columns. Rows are immutable once built.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::vector<std::string> feature_names,
          std::vector<FeatureVector> rows, bool standardized = false);

  int num_features() const { return static_cast<int>(feature_names_.size()); }
  int size() const { return static_cast<int>(rows_.size()); }
  bool empty() const { return rows_.empty(); }
  bool standardized() const { return standardized_; }

  std::span<const std::string> feature_names() const { return feature_names_; }
  const FeatureVector& row(int i) const { return rows_[i]; }
  std::span<const FeatureVector> rows() const { return rows_; }
  std::vector<double> Column(int j) const;

  Dataset Subset(std::span<const int> indices) const;

 private:
  std::vector<std::string> feature_names_;
  std::vector<FeatureVector> rows_;
  bool standardized_ = false;
};

struct LabeledDataset {
  Dataset features;
  std::optional<std::vector<double>> labels;
};

struct CsvOptions {
  // Column holding the regression target; excluded from the features.
  std::optional<std::string> label_column;
  // Columns dropped before parsing (e.g. categorical ones).
  std::vector<std::string> drop_columns;
};

// CSV with a header row. Every kept cell must parse as a finite number.
LabeledDataset ParseCsv(std::string_view text, const CsvOptions& options = {});
LabeledDataset LoadCsv(const std::string& path, const CsvOptions& options = {});

// Writes `dataset` (and labels as the last column, if given) as CSV with
// round-trip precision.
std::string ToCsv(const Dataset& dataset,
                  const std::optional<std::vector<double>>& labels = std::nullopt,
                  const std::string& label_name = "label");

// Per-column affine parameters. Uses the population (divide by N) standard
// deviation.
struct StandardizationParams {
  std::vector<std::string> names;
  std::vector<double> mean;
  std::vector<double> stddev;

  // {"<name>": {"mean": m, "std": s}, ...}
  std::string ToJson() const;
  static StandardizationParams FromJson(std::string_view json_text);
};

// Throws Error(kValidation) naming any column with zero spread.
StandardizationParams FitStandardization(const Dataset& dataset);
// Columns are matched by name; every dataset column needs parameters.
Dataset Standardize(const Dataset& dataset, const StandardizationParams& params);
Dataset Unstandardize(const Dataset& dataset, const StandardizationParams& params);

// Shuffled split of row indices 0..n-1 into (train, test) with
// round(ratio * n) training rows. 0 < ratio < 1 and both parts non-empty.
std::pair<std::vector<int>, std::vector<int>> SplitIndices(int n, double ratio,
                                                           uint64_t seed);

// A benchmark query: one instance and the features to perturb.
struct PairSample {
  int instance_index;
  FeatureSet features;
};

// `count` pairs whose subset sizes cycle through `sizes` (default 1..d), so
// when count is not a multiple of the number of sizes the first sizes get one
// extra pair. Instances are uniform over [0, num_instances); each feature set
// is uniform among subsets of its size. A size of 0 yields the empty set.
std::vector<PairSample> SamplePairs(int num_instances, int num_features,
                                    int count, uint64_t seed,
                                    std::span<const int> sizes = {});

}  // namespace pg2

#endif  // PG2_DATA_H_
