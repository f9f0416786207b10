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

#ifndef PG2_RANKING_H_
#define PG2_RANKING_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pg2/exact.h"
#include "pg2/feature_set.h"
#include "pg2/model.h"
#include "pg2/perturb.h"

namespace pg2 {

// Permutation of [0, d), most important feature first.
class Ranking {
 public:
  Ranking() = default;
  // Throws Error(kInvalidArgument) unless `order` is a permutation of [0, d).
  explicit Ranking(std::vector<int> order);

  int size() const { return static_cast<int>(order_.size()); }
  int operator[](int position) const { return order_[position]; }
  std::span<const int> order() const { return order_; }

  // The k most important features.
  FeatureSet Prefix(int k) const;
  Ranking Reversed() const;

  bool operator==(const Ranking&) const = default;

 private:
  std::vector<int> order_;
};

struct GreedyStats {
  int exact_calls = 0;
};

// Grows the important set one feature at a time, appending the feature whose
// addition gives the largest squared prediction gap. Ties go to the lowest
// feature index. Makes d + (d-1) + ... + 1 exact calls.
Ranking GreedyPg2Ranking(const TreeEnsemble& ensemble, std::span<const double> x,
                         const PerturbationSpec& spec,
                         GreedyStats* stats = nullptr,
                         const ExactOptions& options = {});

// Sorts features by |phi_i| descending; ties keep index order.
Ranking RankingFromAttribution(std::span<const double> phi);

enum class AgreementMode {
  kSet,      // top-k prefixes contain the same features
  kOrdered,  // top-k prefixes are identical sequences
};

// Fraction of positions i where rankings a[i] and b[i] agree on their top k.
double TopKAgreement(std::span<const Ranking> a, std::span<const Ranking> b,
                     int k, AgreementMode mode = AgreementMode::kSet);

// One attribution vector per row, either CSV (optional header row of
// non-numeric names) or a JSON array of arrays. All rows must have length
// num_features; a negative num_features takes the length of the first row.
std::vector<std::vector<double>> ParseAttributions(std::string_view text,
                                                   int num_features);
std::vector<std::vector<double>> LoadAttributions(const std::string& path,
                                                  int num_features);

// Rankings as CSV rows of feature indices, one ranking per line.
std::string RankingsToCsv(std::span<const Ranking> rankings);
std::vector<Ranking> ParseRankingsCsv(std::string_view text, int num_features);

}  // namespace pg2

#endif  // PG2_RANKING_H_
