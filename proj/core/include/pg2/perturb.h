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

#ifndef PG2_PERTURB_H_
#define PG2_PERTURB_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pg2/random.h"

namespace pg2 {

// Distribution of the additive noise applied to a single perturbed feature.
// Every kind has an O(1) (gaussian, uniform) or O(log k) (discrete) CDF.
class Distribution {
 public:
  enum class Kind { kGaussian, kUniform, kDiscrete };

  // N(0, sigma^2); sigma > 0.
  static Distribution Gaussian(double sigma);
  // U[-half_width, half_width]; half_width > 0.
  static Distribution Uniform(double half_width);
  // Finite support. Offsets strictly increasing, probabilities non-negative
  // and summing to 1 within 1e-12.
  static Distribution Discrete(std::vector<std::pair<double, double>> points);

  Kind kind() const { return kind_; }
  // sigma for gaussian, half width for uniform; 0 for discrete.
  double scale() const { return scale_; }
  std::span<const double> offsets() const { return offsets_; }
  std::span<const double> probabilities() const { return probabilities_; }

  // Pr[delta <= v]. Defined on the extended reals; NaN is a domain error.
  double Cdf(double v) const;
  // Pr[delta < v], the left limit of the CDF. Equal to Cdf for the
  // continuous kinds.
  double CdfBelow(double v) const;
  // Probability that lower <= x + delta < upper. Zero for empty intervals.
  double IntervalProbability(double x, double lower, double upper) const;

  // For continuous kinds the v with Cdf(v) == u; for discrete the smallest
  // offset whose CDF is >= u. Requires 0 < u < 1.
  double InverseCdf(double u) const;
  // Inverse-transform draw from a (0,1) uniform, so streams stay portable.
  double Sample(Rng& rng) const;

  std::string ToString() const;

 private:
  Distribution(Kind kind, double scale) : kind_(kind), scale_(scale) {}

  Kind kind_;
  double scale_;
  std::vector<double> offsets_;
  std::vector<double> probabilities_;
  std::vector<double> cumulative_;  // cumulative_[i] = sum of p[0..i]
};

// Standard normal CDF and quantile.
double NormalCdf(double z);
// Wichura's AS241 rational approximation (about 1e-16 relative accuracy).
double NormalQuantile(double u);

// Per-feature noise distributions. A feature without a distribution cannot be
// perturbed.
class PerturbationSpec {
 public:
  // The same distribution for every one of `num_features` features.
  static PerturbationSpec Shared(const Distribution& dist, int num_features);
  explicit PerturbationSpec(std::vector<std::optional<Distribution>> per_feature);

  int num_features() const { return static_cast<int>(per_feature_.size()); }
  bool Covers(int feature) const;
  // Throws Error(kInvalidArgument) when `feature` has no distribution.
  const Distribution& For(int feature) const;

 private:
  std::vector<std::optional<Distribution>> per_feature_;
};

// Parses a perturbation config. Accepted forms:
//   {"distribution": D}                      same D for all features
//   {"per_feature": [D | null, ...]}         one entry per feature
// with D = {"kind": "gaussian", "sigma": s}
//        | {"kind": "uniform", "half_width": h}
//        | {"kind": "discrete", "points": [[offset, probability], ...]}
PerturbationSpec ParsePerturbationConfig(std::string_view json_text,
                                         int num_features);

}  // namespace pg2

#endif  // PG2_PERTURB_H_
