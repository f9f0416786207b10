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

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "pg2/error.h"
#include "pg2/random.h"
#include "pg2/synthetic.h"

namespace pg2 {
namespace {

ErrorKind KindOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no pg2::Error thrown";
  return ErrorKind::kInvalidArgument;
}

PerturbationSpec Gauss(double sigma, int d) {
  return PerturbationSpec::Shared(Distribution::Gaussian(sigma), d);
}

bool IsPermutation(const Ranking& r, int d) {
  std::vector<int> sorted(r.order().begin(), r.order().end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> iota(d);
  std::iota(iota.begin(), iota.end(), 0);
  return sorted == iota;
}

TreeEnsemble ScaleLeaves(const TreeEnsemble& e, double factor) {
  std::vector<Tree> trees;
  for (const Tree& t : e.trees()) {
    std::vector<Node> nodes(t.nodes().begin(), t.nodes().end());
    for (Node& n : nodes) {
      if (n.IsLeaf()) n.value *= factor;
    }
    trees.emplace_back(std::move(nodes));
  }
  return TreeEnsemble(std::move(trees), e.num_features());
}

TEST(GreedyTest, SingleRelevantFeature) {
  const TreeEnsemble e({Tree::Stump(3, 0.0, -1.0, 2.0), Tree::Stump(3, 0.5, 0.0, 1.0)}, 5);
  const Ranking r = GreedyPg2Ranking(e, std::vector<double>{0.3, -2, 7, 0.2, 1}, Gauss(1, 5));
  EXPECT_EQ(r, Ranking({3, 0, 1, 2, 4}));
}

TEST(GreedyTest, LargeSpreadFeatureFirst) {
  std::vector<Node> nodes(7);
  nodes[0] = {0, 0.0, 1, 4, 0.0};
  nodes[1] = {1, 0.0, 2, 3, 0.0};
  nodes[2].value = -10.1;
  nodes[3].value = -9.9;
  nodes[4] = {1, 0.0, 5, 6, 0.0};
  nodes[5].value = 9.9;
  nodes[6].value = 10.1;
  const TreeEnsemble e({Tree(nodes)}, 2);
  const Ranking r = GreedyPg2Ranking(e, std::vector<double>{-1.0, -1.0}, Gauss(1, 2));
  EXPECT_EQ(r[0], 0);
}

TEST(GreedyTest, SingleFeature) {
  const TreeEnsemble e({Tree::Stump(0, 0.0, 0.0, 1.0)}, 1);
  EXPECT_EQ(GreedyPg2Ranking(e, std::vector<double>{0.0}, Gauss(1, 1)), Ranking({0}));
}

TEST(GreedyTest, CallCount) {
  Rng rng(41);
  for (int d = 1; d <= 7; ++d) {
    const TreeEnsemble e = RandomEnsemble({.num_trees = 3, .max_depth = 3, .num_features = d}, rng);
    GreedyStats stats;
    const Ranking r = GreedyPg2Ranking(e, RandomPoint(d, rng), Gauss(0.5, d), &stats);
    EXPECT_EQ(stats.exact_calls, d * (d + 1) / 2);
    EXPECT_TRUE(IsPermutation(r, d));
  }
}

TEST(GreedyTest, ValidPermutationAndScaleInvariant) {
  Rng rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 2 + trial % 6;
    const TreeEnsemble e = RandomEnsemble(
        {.num_trees = 1 + trial % 5, .max_depth = 1 + trial % 4, .num_features = d,
         .split_probability = 0.8},
        rng);
    const FeatureVector x = RandomPoint(d, rng);
    const Ranking r = GreedyPg2Ranking(e, x, Gauss(0.4, d));
    ASSERT_TRUE(IsPermutation(r, d));
    // Power-of-two factors scale every gap exactly, so even ties survive.
    EXPECT_EQ(GreedyPg2Ranking(ScaleLeaves(e, 4.0), x, Gauss(0.4, d)), r) << trial;
    EXPECT_EQ(GreedyPg2Ranking(ScaleLeaves(e, 0.125), x, Gauss(0.4, d)), r) << trial;
  }
}

TEST(GreedyTest, UnusedFeaturesKeepIndexOrder) {
  // Unused features always tie with each other, so they appear ascending.
  Rng rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 8;
    const TreeEnsemble e = RandomEnsemble(
        {.num_trees = 2, .max_depth = 2, .num_features = d}, rng);
    const Ranking r = GreedyPg2Ranking(e, RandomPoint(d, rng), Gauss(0.5, d));
    std::vector<int> unused;
    for (int q : r.order()) {
      if (!e.UsesFeature(q)) unused.push_back(q);
    }
    EXPECT_TRUE(std::is_sorted(unused.begin(), unused.end())) << trial;
  }
}

TEST(GreedyTest, UnusedFeaturesTrailWhenGapsOnlyGrow) {
  // Increasing stumps and non-negative offsets: every gap is >= 0, so adding a
  // used feature strictly raises PG2 and unused features land in the tail.
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 6;
    std::vector<int> used;
    for (int q = 0; q < d; ++q) {
      if (rng() % 2) used.push_back(q);
    }
    if (used.empty()) used.push_back(static_cast<int>(rng() % d));
    FeatureVector x(d);
    for (double& v : x) v = std::uniform_real_distribution<double>(-1, 1)(rng);
    std::vector<Tree> trees;
    for (int q : used) {
      const double t = x[q] + std::uniform_real_distribution<double>(0.1, 0.9)(rng);
      trees.push_back(Tree::Stump(q, t, 0.0, std::uniform_real_distribution<double>(0.5, 2)(rng)));
    }
    const TreeEnsemble e(std::move(trees), d);
    const PerturbationSpec spec =
        PerturbationSpec::Shared(Distribution::Discrete({{0.0, 0.5}, {1.0, 0.5}}), d);
    const Ranking r = GreedyPg2Ranking(e, x, spec);
    for (int pos = 0; pos < d; ++pos) {
      EXPECT_EQ(e.UsesFeature(r[pos]), pos < static_cast<int>(used.size())) << trial;
    }
  }
}

TEST(AttributionTest, Examples) {
  EXPECT_EQ(RankingFromAttribution(std::vector<double>{0.1, -0.5, 0.2}), Ranking({1, 2, 0}));
  EXPECT_EQ(RankingFromAttribution(std::vector<double>{0, 0, 0}), Ranking({0, 1, 2}));
  EXPECT_EQ(RankingFromAttribution(std::vector<double>{-3, 3}), Ranking({0, 1}));
}

TEST(AttributionTest, Parsing) {
  const auto csv = ParseAttributions("a,b,c\n0.1,-0.5,0.2\n1,2,3\n", 3);
  ASSERT_EQ(csv.size(), 2u);
  EXPECT_EQ(csv[0], (std::vector<double>{0.1, -0.5, 0.2}));
  EXPECT_EQ(ParseAttributions("0.1,-0.5,0.2\n", 3).size(), 1u);
  EXPECT_EQ(ParseAttributions("[[0.1,-0.5,0.2],[1,2,3]]", 3)[1], (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(ParseAttributions("[[1,2]]", -1)[0].size(), 2u);
  EXPECT_THROW(ParseAttributions("1,2\n", 3), Error);
  EXPECT_THROW(ParseAttributions("1,2,3\n4,x,6\n", 3), Error);
}

TEST(RankingTest, InvalidPermutations) {
  EXPECT_EQ(KindOf([] { Ranking({0, 0}); }), ErrorKind::kInvalidArgument);
  EXPECT_EQ(KindOf([] { Ranking({1, 2}); }), ErrorKind::kInvalidArgument);
  EXPECT_EQ(KindOf([] { Ranking({-1, 0}); }), ErrorKind::kInvalidArgument);
}

TEST(RankingTest, CsvRoundTrip) {
  const std::vector<Ranking> rankings = {Ranking({2, 0, 1}), Ranking({0, 1, 2})};
  const std::string csv = RankingsToCsv(rankings);
  EXPECT_EQ(csv, "2,0,1\n0,1,2\n");
  EXPECT_EQ(ParseRankingsCsv(csv, 3), rankings);
}

TEST(TopKTest, Examples) {
  const std::vector<Ranking> a = {Ranking({0, 1, 2})};
  for (int k = 0; k <= 3; ++k) EXPECT_EQ(TopKAgreement(a, a, k), 1.0);
  EXPECT_EQ(TopKAgreement(a, std::vector<Ranking>{Ranking({1, 0, 2})}, 2), 1.0);
  EXPECT_EQ(TopKAgreement(a, std::vector<Ranking>{Ranking({1, 0, 2})}, 2, AgreementMode::kOrdered),
            0.0);
  EXPECT_EQ(TopKAgreement(a, std::vector<Ranking>{Ranking({2, 1, 0})}, 1), 0.0);
  const std::vector<Ranking> two = {Ranking({0, 1, 2}), Ranking({2, 1, 0})};
  EXPECT_EQ(TopKAgreement(two, std::vector<Ranking>{Ranking({0, 2, 1}), Ranking({0, 1, 2})}, 1),
            0.5);
}

TEST(TopKTest, Errors) {
  const std::vector<Ranking> a = {Ranking({0, 1, 2})};
  const std::vector<Ranking> b = {Ranking({0, 1, 2}), Ranking({0, 1, 2})};
  EXPECT_EQ(KindOf([&] { TopKAgreement(a, b, 1); }), ErrorKind::kInvalidArgument);
  EXPECT_EQ(KindOf([&] { TopKAgreement(a, a, 4); }), ErrorKind::kInvalidArgument);
}

TEST(TopKTest, MatchesDirectSetComparison) {
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + trial % 6;
    const int n = 1 + trial % 9;
    std::vector<Ranking> a, b;
    for (int i = 0; i < n; ++i) {
      std::vector<int> p(d), q(d);
      std::iota(p.begin(), p.end(), 0);
      std::iota(q.begin(), q.end(), 0);
      std::shuffle(p.begin(), p.end(), rng);
      if (rng() % 3) std::shuffle(q.begin(), q.end(), rng); else q = p;
      a.emplace_back(p);
      b.emplace_back(q);
    }
    for (int k = 0; k <= d; ++k) {
      int same = 0;
      for (int i = 0; i < n; ++i) {
        std::set<int> sa(a[i].order().begin(), a[i].order().begin() + k);
        std::set<int> sb(b[i].order().begin(), b[i].order().begin() + k);
        same += sa == sb;
      }
      EXPECT_EQ(TopKAgreement(a, b, k), static_cast<double>(same) / n);
    }
  }
}

}  // namespace
}  // namespace pg2
