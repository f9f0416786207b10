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

#include "pg2/data.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.h"
#include "pg2/error.h"
#include "pg2/random.h"

namespace pg2 {
namespace {

std::string Trim(std::string_view s) {
  const size_t begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return "";
  const size_t end = s.find_last_not_of(" \t\r");
  std::string out(s.substr(begin, end - begin + 1));
  if (out.size() >= 2 && out.front() == '"' && out.back() == '"') {
    out = out.substr(1, out.size() - 2);
  }
  return out;
}

std::vector<std::string> SplitCsvLine(std::string_view line) {
  std::vector<std::string> cells;
  size_t pos = 0;
  for (;;) {
    const size_t comma = line.find(',', pos);
    cells.push_back(Trim(line.substr(pos, comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return cells;
}

std::string FormatRoundTrip(double value) {
  char buffer[32];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

}  // namespace

Dataset::Dataset(std::vector<std::string> feature_names,
                 std::vector<FeatureVector> rows, bool standardized)
    : feature_names_(std::move(feature_names)),
      rows_(std::move(rows)),
      standardized_(standardized) {
  for (size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].size() != feature_names_.size()) {
      Fail(ErrorKind::kValidation, "row " + std::to_string(i) + " has " +
                                       std::to_string(rows_[i].size()) +
                                       " values, expected " +
                                       std::to_string(feature_names_.size()));
    }
  }
}

std::vector<double> Dataset::Column(int j) const {
  std::vector<double> column;
  column.reserve(rows_.size());
  for (const FeatureVector& row : rows_) column.push_back(row[j]);
  return column;
}

Dataset Dataset::Subset(std::span<const int> indices) const {
  std::vector<FeatureVector> rows;
  rows.reserve(indices.size());
  for (int i : indices) rows.push_back(rows_.at(i));
  return Dataset(feature_names_, std::move(rows), standardized_);
}

LabeledDataset ParseCsv(std::string_view text, const CsvOptions& options) {
  std::vector<std::string_view> lines;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = end + 1;
  }
  while (!lines.empty() && Trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty() || Trim(lines.front()).empty()) {
    Fail(ErrorKind::kFormat, "CSV: missing header row");
  }

  const std::vector<std::string> header = SplitCsvLine(lines.front());
  // A first row made only of numbers is data, not names.
  if (std::all_of(header.begin(), header.end(), [](const std::string& cell) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        return !cell.empty() && ec == std::errc() && ptr == cell.data() + cell.size();
      })) {
    Fail(ErrorKind::kFormat, "CSV: missing header row (first row is numeric)");
  }
  int label_index = -1;
  std::vector<int> feature_columns;
  std::vector<std::string> names;
  for (size_t j = 0; j < header.size(); ++j) {
    if (header[j].empty()) {
      Fail(ErrorKind::kFormat, "CSV: empty name for column " + std::to_string(j + 1));
    }
    if (options.label_column && header[j] == *options.label_column) {
      label_index = static_cast<int>(j);
      continue;
    }
    if (std::find(options.drop_columns.begin(), options.drop_columns.end(),
                  header[j]) != options.drop_columns.end()) {
      continue;
    }
    feature_columns.push_back(static_cast<int>(j));
    names.push_back(header[j]);
  }
  if (options.label_column && label_index < 0) {
    Fail(ErrorKind::kValidation,
         "CSV: label column \"" + *options.label_column + "\" not in header");
  }

  std::vector<FeatureVector> rows;
  std::vector<double> labels;
  auto parse_cell = [&](const std::string& cell, size_t line_no, size_t col) {
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size() ||
        !std::isfinite(value)) {
      Fail(ErrorKind::kValidation, "CSV: row " + std::to_string(line_no) +
                                       ", column \"" + header[col] +
                                       "\": not a finite number: \"" + cell + "\"");
    }
    return value;
  };
  for (size_t i = 1; i < lines.size(); ++i) {
    if (Trim(lines[i]).empty()) continue;
    const std::vector<std::string> cells = SplitCsvLine(lines[i]);
    if (cells.size() != header.size()) {
      Fail(ErrorKind::kFormat, "CSV: row " + std::to_string(i + 1) + " has " +
                                   std::to_string(cells.size()) + " cells, header has " +
                                   std::to_string(header.size()));
    }
    FeatureVector row;
    row.reserve(feature_columns.size());
    for (int j : feature_columns) row.push_back(parse_cell(cells[j], i + 1, j));
    rows.push_back(std::move(row));
    if (label_index >= 0) labels.push_back(parse_cell(cells[label_index], i + 1, label_index));
  }
  LabeledDataset result{Dataset(std::move(names), std::move(rows)), std::nullopt};
  if (label_index >= 0) result.labels = std::move(labels);
  return result;
}

LabeledDataset LoadCsv(const std::string& path, const CsvOptions& options) {
  const std::string text = ReadFile(path);
  try {
    return ParseCsv(text, options);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

std::string ToCsv(const Dataset& dataset,
                  const std::optional<std::vector<double>>& labels,
                  const std::string& label_name) {
  std::string out;
  for (int j = 0; j < dataset.num_features(); ++j) {
    if (j > 0) out += ",";
    out += dataset.feature_names()[j];
  }
  if (labels) out += (dataset.num_features() > 0 ? "," : "") + label_name;
  out += "\n";
  for (int i = 0; i < dataset.size(); ++i) {
    const FeatureVector& row = dataset.row(i);
    for (size_t j = 0; j < row.size(); ++j) {
      if (j > 0) out += ",";
      out += FormatRoundTrip(row[j]);
    }
    if (labels) out += (row.empty() ? "" : ",") + FormatRoundTrip((*labels)[i]);
    out += "\n";
  }
  return out;
}

std::string StandardizationParams::ToJson() const {
  nlohmann::ordered_json root = nlohmann::ordered_json::object();
  for (size_t j = 0; j < names.size(); ++j) {
    root[names[j]] = {{"mean", mean[j]}, {"std", stddev[j]}};
  }
  return root.dump(1) + "\n";
}

StandardizationParams StandardizationParams::FromJson(std::string_view json_text) {
  nlohmann::ordered_json root;
  try {
    root = nlohmann::ordered_json::parse(json_text.begin(), json_text.end());
  } catch (const nlohmann::ordered_json::parse_error& e) {
    Fail(ErrorKind::kFormat, std::string("standardization sidecar: ") + e.what());
  }
  if (!root.is_object()) {
    Fail(ErrorKind::kFormat, "standardization sidecar must be an object");
  }
  StandardizationParams params;
  for (const auto& [name, entry] : root.items()) {
    if (!entry.is_object() || !entry.contains("mean") || !entry.contains("std") ||
        !entry["mean"].is_number() || !entry["std"].is_number()) {
      Fail(ErrorKind::kFormat, "standardization sidecar: \"" + name +
                                   "\" needs numeric mean and std");
    }
    params.names.push_back(name);
    params.mean.push_back(entry["mean"].get<double>());
    params.stddev.push_back(entry["std"].get<double>());
  }
  return params;
}

StandardizationParams FitStandardization(const Dataset& dataset) {
  if (dataset.empty()) Fail(ErrorKind::kValidation, "cannot standardize an empty dataset");
  StandardizationParams params;
  const double n = dataset.size();
  for (int j = 0; j < dataset.num_features(); ++j) {
    const std::vector<double> column = dataset.Column(j);
    const double mean = std::accumulate(column.begin(), column.end(), 0.0) / n;
    double squares = 0.0;
    for (double v : column) squares += (v - mean) * (v - mean);
    const double stddev = std::sqrt(squares / n);
    const std::string& name = dataset.feature_names()[j];
    if (!(stddev > 0.0)) {
      Fail(ErrorKind::kValidation,
           "column \"" + name + "\" is constant; cannot standardize");
    }
    params.names.push_back(name);
    params.mean.push_back(mean);
    params.stddev.push_back(stddev);
  }
  return params;
}

namespace {

// Index into params for every dataset column.
std::vector<int> MatchColumns(const Dataset& dataset,
                              const StandardizationParams& params) {
  std::vector<int> index;
  for (const std::string& name : dataset.feature_names()) {
    const auto it = std::find(params.names.begin(), params.names.end(), name);
    if (it == params.names.end()) {
      Fail(ErrorKind::kValidation,
           "no standardization parameters for column \"" + name + "\"");
    }
    const int k = static_cast<int>(it - params.names.begin());
    if (!(params.stddev[k] > 0.0)) {
      Fail(ErrorKind::kValidation, "column \"" + name + "\" has non-positive std");
    }
    index.push_back(k);
  }
  return index;
}

}  // namespace

Dataset Standardize(const Dataset& dataset, const StandardizationParams& params) {
  const std::vector<int> index = MatchColumns(dataset, params);
  std::vector<FeatureVector> rows(dataset.rows().begin(), dataset.rows().end());
  for (FeatureVector& row : rows) {
    for (size_t j = 0; j < row.size(); ++j) {
      row[j] = (row[j] - params.mean[index[j]]) / params.stddev[index[j]];
    }
  }
  return Dataset({dataset.feature_names().begin(), dataset.feature_names().end()},
                 std::move(rows), /*standardized=*/true);
}

Dataset Unstandardize(const Dataset& dataset, const StandardizationParams& params) {
  const std::vector<int> index = MatchColumns(dataset, params);
  std::vector<FeatureVector> rows(dataset.rows().begin(), dataset.rows().end());
  for (FeatureVector& row : rows) {
    for (size_t j = 0; j < row.size(); ++j) {
      row[j] = row[j] * params.stddev[index[j]] + params.mean[index[j]];
    }
  }
  return Dataset({dataset.feature_names().begin(), dataset.feature_names().end()},
                 std::move(rows), /*standardized=*/false);
}

std::pair<std::vector<int>, std::vector<int>> SplitIndices(int n, double ratio,
                                                           uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    Fail(ErrorKind::kInvalidArgument, "split ratio must be in (0, 1)");
  }
  const int train_size = static_cast<int>(std::lround(ratio * n));
  if (train_size <= 0 || train_size >= n) {
    Fail(ErrorKind::kInvalidArgument,
         "split of " + std::to_string(n) + " rows at ratio " + std::to_string(ratio) +
             " leaves an empty part");
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  for (int i = n - 1; i > 0; --i) {
    std::swap(order[i], order[UniformIndex(rng, static_cast<uint64_t>(i) + 1)]);
  }
  std::vector<int> train(order.begin(), order.begin() + train_size);
  std::vector<int> test(order.begin() + train_size, order.end());
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  return {std::move(train), std::move(test)};
}

std::vector<PairSample> SamplePairs(int num_instances, int num_features,
                                    int count, uint64_t seed,
                                    std::span<const int> sizes) {
  if (count < 1) Fail(ErrorKind::kInvalidArgument, "pair count must be at least 1");
  if (num_instances < 1) Fail(ErrorKind::kInvalidArgument, "no instances to sample");
  std::vector<int> cycle(sizes.begin(), sizes.end());
  if (cycle.empty()) {
    for (int k = 1; k <= num_features; ++k) cycle.push_back(k);
  }
  if (cycle.empty()) Fail(ErrorKind::kInvalidArgument, "no subset sizes to cycle");
  for (int k : cycle) {
    if (k < 0 || k > num_features) {
      Fail(ErrorKind::kInvalidArgument, "subset size " + std::to_string(k) +
                                            " outside [0, " +
                                            std::to_string(num_features) + "]");
    }
  }
  Rng rng(seed);
  std::vector<int> pool(num_features);
  std::vector<PairSample> pairs;
  pairs.reserve(count);
  for (int p = 0; p < count; ++p) {
    const int size = cycle[p % cycle.size()];
    const int instance = static_cast<int>(UniformIndex(rng, num_instances));
    // Partial Fisher-Yates: the first `size` slots form a uniform subset.
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < size; ++i) {
      const int j = i + static_cast<int>(UniformIndex(rng, num_features - i));
      std::swap(pool[i], pool[j]);
    }
    pairs.push_back({instance, FeatureSet(std::vector<int>(pool.begin(),
                                                           pool.begin() + size))});
  }
  return pairs;
}

}  // namespace pg2
