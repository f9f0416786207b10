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

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "oracles.h"
#include "pg2/error.h"
#include "pg2/random.h"
#include "pg2/synthetic.h"

namespace pg2 {
namespace {

constexpr double kPhi1 = 0.841344746068542948585;
constexpr double kOneMinusPhi1 = 0.158655253931457051415;

ErrorKind KindOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no pg2::Error thrown";
  return ErrorKind::kInvalidArgument;
}

TreeEnsemble CanonicalStump(int num_features = 1) {
  return TreeEnsemble({Tree::Stump(0, 0.0, 0.0, 1.0)}, num_features);
}

PerturbationSpec Gauss(double sigma, int d) {
  return PerturbationSpec::Shared(Distribution::Gaussian(sigma), d);
}

TEST(LeafPairTest, SingleLeaf) {
  const TreeEnsemble e({Tree::Leaf(2.0)}, 3);
  const LeafPairTable t = LeafPairProbabilities(e, std::vector<double>{1, 2, 3}, FeatureSet{0, 2},
                                                Gauss(1.0, 3));
  ASSERT_EQ(t.num_leaves(), 1);
  EXPECT_EQ(t.marginal(0), 1.0);
  EXPECT_EQ(t.joint(0, 0), 1.0);
}

TEST(LeafPairTest, CanonicalStump) {
  const LeafPairTable t =
      LeafPairProbabilities(CanonicalStump(), std::vector<double>{-1.0}, FeatureSet{0}, Gauss(1, 1));
  EXPECT_NEAR(t.marginal(0), kPhi1, 1e-15);
  EXPECT_NEAR(t.marginal(1), kOneMinusPhi1, 1e-15);
  EXPECT_EQ(t.joint(0, 1), 0.0);
  EXPECT_EQ(t.joint(1, 0), 0.0);
}

TEST(LeafPairTest, EmptySetIsIndicator) {
  const LeafPairTable t =
      LeafPairProbabilities(CanonicalStump(), std::vector<double>{-1.0}, FeatureSet{}, Gauss(1, 1));
  EXPECT_EQ(t.marginal(0), 1.0);
  EXPECT_EQ(t.marginal(1), 0.0);
}

TEST(LeafPairTest, MatchesPathProductOracle) {
  Rng rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const int d = 1 + trial % 5;
    const TreeEnsemble e = RandomEnsemble(
        {.num_trees = 1 + trial % 4, .max_depth = 1 + trial % 4, .num_features = d,
         .split_probability = 0.8},
        rng);
    const FeatureVector x = RandomPoint(d, rng);
    std::vector<int> chosen;
    for (int q = 0; q < d; ++q) {
      if ((trial >> q) & 1) chosen.push_back(q);
    }
    const FeatureSet s(chosen);
    const PerturbationSpec spec = Gauss(0.2 + 0.1 * (trial % 7), d);
    const LeafPairTable t = LeafPairProbabilities(e, x, s, spec);
    for (int u = 0; u < t.num_leaves(); ++u) {
      for (int v = 0; v < t.num_leaves(); ++v) {
        const double expected = testing::PathPairProbability(e, x, s, spec, u, v);
        ASSERT_NEAR(t.joint(u, v), expected, 1e-12 * std::max(1.0, expected))
            << "trial " << trial << " pair " << u << "," << v;
      }
      EXPECT_NEAR(t.marginal(u), t.joint(u, u), 1e-15);
    }
  }
}

TEST(LeafPairTest, Normalization) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 300; ++trial) {
    const testing::GridTrial g = testing::RandomGridTrial(rng);
    const LeafPairTable t = LeafPairProbabilities(g.ensemble, g.x, g.perturbed, g.spec);
    const int m = g.ensemble.num_trees();
    std::vector<double> per_tree(m, 0.0);
    std::vector<double> per_pair(m * m, 0.0);
    for (int u = 0; u < t.num_leaves(); ++u) {
      per_tree[t.tree_of(u)] += t.marginal(u);
      for (int v = 0; v < t.num_leaves(); ++v) {
        ASSERT_GE(t.joint(u, v), 0.0);
        ASSERT_LE(t.joint(u, v), 1.0 + 1e-15);
        per_pair[t.tree_of(u) * m + t.tree_of(v)] += t.joint(u, v);
      }
    }
    for (double s : per_tree) EXPECT_NEAR(s, 1.0, 1e-9);
    for (double s : per_pair) EXPECT_NEAR(s, 1.0, 1e-9);
  }
}

TEST(LeafPairTest, StateRevertsAfterTraversal) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const testing::GridTrial g = testing::RandomGridTrial(rng);
    TraversalState state(g.ensemble.num_features());
    ASSERT_TRUE(state.IsInitial());
    LeafPairProbabilities(g.ensemble, g.x, g.perturbed, g.spec, &state);
    EXPECT_TRUE(state.IsInitial()) << "trial " << trial;
  }
}

TEST(Pg2ExactTest, EmptySetIsZero) {
  Rng rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    const TreeEnsemble e = RandomEnsemble({.num_trees = 5, .max_depth = 4, .num_features = 4}, rng);
    EXPECT_EQ(Pg2Exact(e, RandomPoint(4, rng), FeatureSet{}, Gauss(1, 4)), 0.0);
  }
}

TEST(Pg2ExactTest, CanonicalStump) {
  EXPECT_NEAR(Pg2Exact(CanonicalStump(), std::vector<double>{-1.0}, FeatureSet{0}, Gauss(1, 1)),
              kOneMinusPhi1, 1e-12);
}

TEST(Pg2ExactTest, TwoStumpsDiscrete) {
  const TreeEnsemble e({Tree::Stump(0, 0.0, 0.0, 1.0), Tree::Stump(0, 0.0, 0.0, 1.0)}, 1);
  const PerturbationSpec spec =
      PerturbationSpec::Shared(Distribution::Discrete({{-1.0, 0.5}, {2.0, 0.5}}), 1);
  const std::vector<double> x = {-1.0};
  EXPECT_NEAR(Pg2Exact(e, x, FeatureSet{0}, spec), 2.0, 1e-15);
  EXPECT_EQ(Pg2BruteForce(e, x, FeatureSet{0}, spec), 2.0);
  EXPECT_EQ(Pg2BruteForce(e, x, FeatureSet{}, spec), 0.0);
}

TEST(Pg2ExactTest, MatchesBruteForceSmall) {
  // 3 trees, depth <= 3, d = 4, 3-point offsets
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 1000; ++trial) {
    testing::GridTrialOptions options{.max_trees = 3, .max_depth = 3, .max_features = 4,
                                      .max_points = 3};
    const testing::GridTrial g = testing::RandomGridTrial(rng, options);
    const double exact = Pg2Exact(g.ensemble, g.x, g.perturbed, g.spec);
    const double brute = Pg2BruteForce(g.ensemble, g.x, g.perturbed, g.spec);
    ASSERT_TRUE(testing::NearlyEqual(exact, brute)) << "trial " << trial << ": " << exact
                                                    << " vs " << brute;
  }
}

TEST(Pg2ExactTest, MatchesCellEnumerationGaussian) {
  Rng rng(26);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + trial % 4;
    const TreeEnsemble e = RandomEnsemble(
        {.num_trees = 1 + trial % 4, .max_depth = 1 + trial % 3, .num_features = d}, rng);
    const FeatureVector x = RandomPoint(d, rng);
    const FeatureSet s = FeatureSet::All(d);
    const PerturbationSpec spec = Gauss(0.1 + 0.15 * (trial % 10), d);
    const double exact = Pg2Exact(e, x, s, spec);
    const double cells = testing::CellEnumerationPg2(e, x, s, spec);
    ASSERT_NEAR(exact, cells, 1e-10 * std::max(1.0, cells)) << "trial " << trial;
  }
}

TEST(Pg2ExactTest, MatchesCellEnumerationMixedKinds) {
  std::mt19937_64 rng(27);
  for (int trial = 0; trial < 200; ++trial) {
    testing::GridTrial g = testing::RandomGridTrial(rng);
    std::vector<std::optional<Distribution>> per_feature(g.ensemble.num_features());
    std::vector<int> chosen;
    for (int q = 0; q < g.ensemble.num_features(); ++q) {
      switch ((trial + q) % 3) {
        case 0: per_feature[q] = Distribution::Gaussian(0.5); break;
        case 1: per_feature[q] = Distribution::Uniform(0.75); break;
        default: per_feature[q] = Distribution::Discrete({{-0.5, 0.5}, {0.25, 0.5}}); break;
      }
      if ((trial >> q) & 1) chosen.push_back(q);
    }
    const PerturbationSpec spec(per_feature);
    const FeatureSet s(chosen);
    ASSERT_NEAR(Pg2Exact(g.ensemble, g.x, s, spec),
                testing::CellEnumerationPg2(g.ensemble, g.x, s, spec), 1e-10)
        << "trial " << trial;
  }
}

TEST(Pg2ExactTest, PruningDoesNotChangeResult) {
  std::mt19937_64 rng(28);
  for (int trial = 0; trial < 300; ++trial) {
    const testing::GridTrial g = testing::RandomGridTrial(rng);
    const double pruned = Pg2Exact(g.ensemble, g.x, g.perturbed, g.spec, {.prune_zero_products = true});
    const double full = Pg2Exact(g.ensemble, g.x, g.perturbed, g.spec, {.prune_zero_products = false});
    const double brute = Pg2BruteForce(g.ensemble, g.x, g.perturbed, g.spec);
    ASSERT_TRUE(testing::NearlyEqual(pruned, brute)) << trial;
    ASSERT_TRUE(testing::NearlyEqual(full, brute)) << trial;
  }
}

TEST(Pg2ExactTest, ZeroFactorThenRecovery) {
  // Feature 1 is unperturbed and x_1 = 5 rules out the left subtree, whose
  // deeper split on feature 1 would otherwise divide by a zero factor.
  std::vector<Node> nodes(7);
  nodes[0] = {1, 0.0, 1, 4, 0.0};
  nodes[1] = {1, 10.0, 2, 3, 0.0};
  nodes[2].value = 1.0;
  nodes[3].value = 2.0;
  nodes[4] = {0, 0.0, 5, 6, 0.0};
  nodes[5].value = -1.0;
  nodes[6].value = 3.0;
  const TreeEnsemble e({Tree(nodes), Tree(nodes)}, 2);
  const std::vector<double> x = {0.0, 5.0};
  const PerturbationSpec spec =
      PerturbationSpec::Shared(Distribution::Discrete({{-1.0, 0.25}, {0.5, 0.75}}), 2);
  for (const bool prune : {false, true}) {
    EXPECT_DOUBLE_EQ(Pg2Exact(e, x, FeatureSet{0}, spec, {.prune_zero_products = prune}),
                     Pg2BruteForce(e, x, FeatureSet{0}, spec));
  }
  // x = 3 so both gaps are 8 when the split flips; 0.25 * 64
  EXPECT_DOUBLE_EQ(Pg2BruteForce(e, x, FeatureSet{0}, spec), 16.0);
}

TEST(Pg2ExactTest, FromLeafPairsAgrees) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    const testing::GridTrial g = testing::RandomGridTrial(rng);
    const LeafPairTable t = LeafPairProbabilities(g.ensemble, g.x, g.perturbed, g.spec);
    const double expanded = Pg2FromLeafPairs(t, g.ensemble.Predict(g.x));
    const double streamed = Pg2Exact(g.ensemble, g.x, g.perturbed, g.spec);
    // The displayed expansion cancels c^2 terms, so compare on the scale of c^2.
    const double c = g.ensemble.Predict(g.x);
    EXPECT_NEAR(expanded, streamed, 1e-9 * std::max(1.0, c * c + streamed)) << trial;
  }
}

TEST(Pg2ExactTest, UnusedFeaturesGiveZero) {
  const TreeEnsemble e({Tree::Stump(0, 0.0, 0.0, 1.0), Tree::Stump(2, 1.0, 3.0, -3.0)}, 4);
  EXPECT_EQ(Pg2Exact(e, std::vector<double>{0.1, 0.2, 0.3, 0.4}, FeatureSet{1, 3}, Gauss(2, 4)), 0.0);
}

TEST(Pg2ExactTest, PerturbationOffPathWithEqualLeaves) {
  // x goes left at feature 1; feature 0 only splits leaves of equal value.
  std::vector<Node> nodes(5);
  nodes[0] = {1, 0.0, 1, 2, 0.0};
  nodes[1] = {0, 0.0, 3, 4, 0.0};
  nodes[2].value = 9.0;
  nodes[3].value = 2.0;
  nodes[4].value = 2.0;
  const TreeEnsemble e({Tree(nodes)}, 2);
  EXPECT_EQ(Pg2Exact(e, std::vector<double>{0.0, -1.0}, FeatureSet{0}, Gauss(1, 2)), 0.0);
}

TEST(Pg2ExactTest, NonDecreasingInSigma) {
  const TreeEnsemble e = CanonicalStump();
  double prev = 0.0;
  for (double sigma = 0.05; sigma <= 2.0 + 1e-12; sigma += 0.05) {
    const double v = Pg2Exact(e, std::vector<double>{-1.0}, FeatureSet{0}, Gauss(sigma, 1));
    EXPECT_GE(v, prev) << sigma;
    prev = v;
  }
}

TEST(Pg2ExactTest, Errors) {
  const TreeEnsemble e = CanonicalStump(2);
  EXPECT_EQ(KindOf([&] { Pg2Exact(e, std::vector<double>{0.0}, FeatureSet{0}, Gauss(1, 2)); }),
            ErrorKind::kInvalidArgument);
  std::vector<std::optional<Distribution>> partial(2);
  partial[0] = Distribution::Gaussian(1.0);
  const PerturbationSpec spec(partial);
  EXPECT_EQ(KindOf([&] { Pg2Exact(e, std::vector<double>{0.0, 0.0}, FeatureSet{1}, spec); }),
            ErrorKind::kInvalidArgument);
  EXPECT_EQ(KindOf([&] { Pg2Exact(e, std::vector<double>{0.0, 0.0}, FeatureSet{2}, Gauss(1, 2)); }),
            ErrorKind::kInvalidArgument);
  EXPECT_EQ(KindOf([&] { Pg2BruteForce(e, std::vector<double>{0.0, 0.0}, FeatureSet{0}, Gauss(1, 2)); }),
            ErrorKind::kInvalidArgument);
  // 11^7 > 10^7 combinations
  std::vector<std::pair<double, double>> points;
  for (int i = 0; i < 11; ++i) points.emplace_back(i, i < 10 ? 0.09 : 0.1);
  const TreeEnsemble wide({Tree::Stump(0, 0.0, 0.0, 1.0)}, 7);
  const PerturbationSpec many = PerturbationSpec::Shared(Distribution::Discrete(points), 7);
  EXPECT_EQ(KindOf([&] {
              Pg2BruteForce(wide, std::vector<double>(7, 0.0), FeatureSet::All(7), many);
            }),
            ErrorKind::kCapacity);
}

}  // namespace
}  // namespace pg2
