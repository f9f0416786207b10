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

#include "pg2/ranking.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "json.h"
#include "pg2/error.h"

namespace pg2 {
namespace {

std::vector<std::string_view> SplitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
      line.remove_suffix(1);
    }
    if (!line.empty()) lines.push_back(line);
    pos = end + 1;
  }
  return lines;
}

std::vector<std::string_view> SplitCommas(std::string_view line) {
  std::vector<std::string_view> cells;
  size_t pos = 0;
  for (;;) {
    const size_t comma = line.find(',', pos);
    std::string_view cell = line.substr(pos, comma - pos);
    while (!cell.empty() && cell.front() == ' ') cell.remove_prefix(1);
    while (!cell.empty() && cell.back() == ' ') cell.remove_suffix(1);
    cells.push_back(cell);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return cells;
}

template <typename T>
bool ParseNumber(std::string_view cell, T& value) {
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  return !cell.empty() && ec == std::errc() && ptr == cell.data() + cell.size();
}

}  // namespace

Ranking::Ranking(std::vector<int> order) : order_(std::move(order)) {
  std::vector<bool> seen(order_.size(), false);
  for (int f : order_) {
    if (f < 0 || f >= size() || seen[f]) {
      Fail(ErrorKind::kInvalidArgument, "ranking is not a permutation of [0, " +
                                            std::to_string(size()) + ")");
    }
    seen[f] = true;
  }
}

FeatureSet Ranking::Prefix(int k) const {
  if (k < 0 || k > size()) {
    Fail(ErrorKind::kInvalidArgument, "prefix length " + std::to_string(k) +
                                          " outside [0, " + std::to_string(size()) + "]");
  }
  return FeatureSet(std::vector<int>(order_.begin(), order_.begin() + k));
}

Ranking Ranking::Reversed() const {
  return Ranking(std::vector<int>(order_.rbegin(), order_.rend()));
}

Ranking GreedyPg2Ranking(const TreeEnsemble& ensemble, std::span<const double> x,
                         const PerturbationSpec& spec, GreedyStats* stats,
                         const ExactOptions& options) {
  const int d = ensemble.num_features();
  std::vector<int> order;
  order.reserve(d);
  std::vector<bool> chosen(d, false);
  FeatureSet important;
  for (int step = 0; step < d; ++step) {
    int best = -1;
    double best_gap = 0.0;
    for (int i = 0; i < d; ++i) {
      if (chosen[i]) continue;
      const double gap = Pg2Exact(ensemble, x, important.With(i), spec, options);
      if (stats != nullptr) ++stats->exact_calls;
      if (best < 0 || gap > best_gap) {
        best = i;
        best_gap = gap;
      }
    }
    chosen[best] = true;
    order.push_back(best);
    important = important.With(best);
  }
  return Ranking(std::move(order));
}

Ranking RankingFromAttribution(std::span<const double> phi) {
  for (double v : phi) {
    if (!std::isfinite(v)) {
      Fail(ErrorKind::kInvalidArgument, "attribution vector has a non-finite entry");
    }
  }
  std::vector<int> order(phi.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::fabs(phi[a]) > std::fabs(phi[b]);
  });
  return Ranking(std::move(order));
}

double TopKAgreement(std::span<const Ranking> a, std::span<const Ranking> b,
                     int k, AgreementMode mode) {
  if (a.size() != b.size()) {
    Fail(ErrorKind::kInvalidArgument, "ranking lists differ in length");
  }
  if (a.empty()) Fail(ErrorKind::kInvalidArgument, "no rankings to compare");
  int agree = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) {
      Fail(ErrorKind::kInvalidArgument, "rankings differ in dimension");
    }
    if (k < 0 || k > a[i].size()) {
      Fail(ErrorKind::kInvalidArgument, "k outside [0, d]");
    }
    const auto pa = a[i].order().first(k);
    const auto pb = b[i].order().first(k);
    const bool same = mode == AgreementMode::kOrdered
                          ? std::equal(pa.begin(), pa.end(), pb.begin())
                          : a[i].Prefix(k) == b[i].Prefix(k);
    if (same) ++agree;
  }
  return static_cast<double>(agree) / static_cast<double>(a.size());
}

std::vector<std::vector<double>> ParseAttributions(std::string_view text,
                                                   int num_features) {
  std::vector<std::vector<double>> rows;
  size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '[') {
    nlohmann::json root;
    try {
      root = nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
      Fail(ErrorKind::kFormat, std::string("attributions: ") + e.what());
    }
    for (const auto& row : root) {
      if (!row.is_array()) Fail(ErrorKind::kFormat, "attributions: rows must be arrays");
      std::vector<double> values;
      for (const auto& v : row) {
        if (!v.is_number()) Fail(ErrorKind::kFormat, "attributions: non-numeric entry");
        values.push_back(v.get<double>());
      }
      rows.push_back(std::move(values));
    }
  } else {
    const auto lines = SplitLines(text);
    for (size_t i = 0; i < lines.size(); ++i) {
      const auto cells = SplitCommas(lines[i]);
      std::vector<double> values;
      bool numeric = true;
      for (std::string_view cell : cells) {
        double v = 0.0;
        if (!ParseNumber(cell, v)) {
          numeric = false;
          break;
        }
        values.push_back(v);
      }
      if (!numeric) {
        if (i == 0) continue;  // header
        Fail(ErrorKind::kFormat,
             "attributions: line " + std::to_string(i + 1) + " is not numeric");
      }
      rows.push_back(std::move(values));
    }
  }
  if (num_features < 0 && !rows.empty()) {
    num_features = static_cast<int>(rows.front().size());
  }
  for (size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<int>(rows[i].size()) != num_features) {
      Fail(ErrorKind::kValidation, "attributions: row " + std::to_string(i + 1) +
                                       " has " + std::to_string(rows[i].size()) +
                                       " entries, expected " +
                                       std::to_string(num_features));
    }
  }
  return rows;
}

std::vector<std::vector<double>> LoadAttributions(const std::string& path,
                                                  int num_features) {
  const std::string text = ReadFile(path);
  try {
    return ParseAttributions(text, num_features);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

std::string RankingsToCsv(std::span<const Ranking> rankings) {
  std::string out;
  for (const Ranking& ranking : rankings) {
    for (int i = 0; i < ranking.size(); ++i) {
      if (i > 0) out += ",";
      out += std::to_string(ranking[i]);
    }
    out += "\n";
  }
  return out;
}

std::vector<Ranking> ParseRankingsCsv(std::string_view text, int num_features) {
  std::vector<Ranking> rankings;
  const auto lines = SplitLines(text);
  for (size_t i = 0; i < lines.size(); ++i) {
    std::vector<int> order;
    for (std::string_view cell : SplitCommas(lines[i])) {
      int v = 0;
      if (!ParseNumber(cell, v)) {
        Fail(ErrorKind::kFormat, "rankings: line " + std::to_string(i + 1) +
                                     " has a non-integer entry");
      }
      order.push_back(v);
    }
    if (static_cast<int>(order.size()) != num_features) {
      Fail(ErrorKind::kValidation, "rankings: line " + std::to_string(i + 1) +
                                       " has " + std::to_string(order.size()) +
                                       " entries, expected " +
                                       std::to_string(num_features));
    }
    rankings.emplace_back(std::move(order));
  }
  return rankings;
}

}  // namespace pg2
