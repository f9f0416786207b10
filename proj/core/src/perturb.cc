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

#include "pg2/perturb.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.h"
#include "pg2/error.h"

namespace pg2 {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

[[noreturn]] void DomainError(const std::string& message) {
  Fail(ErrorKind::kNumericDomain, message);
}

double Polynomial(const double* coefficients, int n, double r) {
  double value = coefficients[n - 1];
  for (int i = n - 2; i >= 0; --i) value = value * r + coefficients[i];
  return value;
}

}  // namespace

double NormalCdf(double z) { return 0.5 * std::erfc(-z * kInvSqrt2); }

double NormalQuantile(double u) {
  if (!(u > 0.0 && u < 1.0)) {
    DomainError("normal quantile requires 0 < u < 1");
  }
  // Numerator and denominator coefficients, lowest order first.
  static constexpr double kA[] = {
      3.3871328727963666080e0, 1.3314166789178437745e+2,
      1.9715909503065514427e+3, 1.3731693765509461125e+4,
      4.5921953931549871457e+4, 6.7265770927008700853e+4,
      3.3430575583588128105e+4, 2.5090809287301226727e+3};
  static constexpr double kB[] = {
      1.0, 4.2313330701600911252e+1, 6.8718700749205790830e+2,
      5.3941960214247511077e+3, 2.1213794301586595867e+4,
      3.9307895800092710610e+4, 2.8729085735721942674e+4,
      5.2264952788528545610e+3};
  static constexpr double kC[] = {
      1.42343711074968357734e0, 4.63033784615654529590e0,
      5.76949722146069140550e0, 3.64784832476320460504e0,
      1.27045825245236838258e0, 2.41780725177450611770e-1,
      2.27238449892691845833e-2, 7.74545014278341407640e-4};
  static constexpr double kD[] = {
      1.0, 2.05319162663775882187e0, 1.67638483018380384940e0,
      6.89767334985100004550e-1, 1.48103976427480074590e-1,
      1.51986665636164571966e-2, 5.47593808499534494600e-4,
      1.05075007164441684324e-9};
  static constexpr double kE[] = {
      6.65790464350110377720e0, 5.46378491116411436990e0,
      1.78482653991729133580e0, 2.96560571828504891230e-1,
      2.65321895265761230930e-2, 1.24266094738807843860e-3,
      2.71155556874348757815e-5, 2.01033439929228813265e-7};
  static constexpr double kF[] = {
      1.0, 5.99832206555887937690e-1, 1.36929880922735805310e-1,
      1.48753612908506148525e-2, 7.86869131145613259100e-4,
      1.84631831751005468180e-5, 1.42151175831644588870e-7,
      2.04426310338993978564e-15};

  const double q = u - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q * Polynomial(kA, 8, r) / Polynomial(kB, 8, r);
  }
  double r = std::sqrt(-std::log(q < 0.0 ? u : 1.0 - u));
  double value;
  if (r <= 5.0) {
    r -= 1.6;
    value = Polynomial(kC, 8, r) / Polynomial(kD, 8, r);
  } else {
    r -= 5.0;
    value = Polynomial(kE, 8, r) / Polynomial(kF, 8, r);
  }
  return q < 0.0 ? -value : value;
}

Distribution Distribution::Gaussian(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    Fail(ErrorKind::kInvalidArgument, "gaussian sigma must be positive and finite");
  }
  return Distribution(Kind::kGaussian, sigma);
}

Distribution Distribution::Uniform(double half_width) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    Fail(ErrorKind::kInvalidArgument,
         "uniform half width must be positive and finite");
  }
  return Distribution(Kind::kUniform, half_width);
}

Distribution Distribution::Discrete(std::vector<std::pair<double, double>> points) {
  if (points.empty()) {
    Fail(ErrorKind::kInvalidArgument, "discrete distribution needs at least one point");
  }
  Distribution dist(Kind::kDiscrete, 0.0);
  double total = 0.0;
  for (size_t i = 0; i < points.size(); ++i) {
    const auto [offset, probability] = points[i];
    if (!std::isfinite(offset) || !(probability >= 0.0)) {
      Fail(ErrorKind::kInvalidArgument,
           "discrete point " + std::to_string(i) +
               " needs a finite offset and non-negative probability");
    }
    if (i > 0 && !(offset > points[i - 1].first)) {
      Fail(ErrorKind::kInvalidArgument,
           "discrete offsets must be strictly increasing");
    }
    total += probability;
    dist.offsets_.push_back(offset);
    dist.probabilities_.push_back(probability);
    dist.cumulative_.push_back(total);
  }
  if (std::fabs(total - 1.0) > 1e-12) {
    Fail(ErrorKind::kInvalidArgument, "discrete probabilities must sum to 1");
  }
  dist.cumulative_.back() = 1.0;
  return dist;
}

double Distribution::Cdf(double v) const {
  if (std::isnan(v)) DomainError("CDF evaluated at NaN");
  switch (kind_) {
    case Kind::kGaussian:
      return NormalCdf(v / scale_);
    case Kind::kUniform:
      return std::clamp((v + scale_) / (2.0 * scale_), 0.0, 1.0);
    case Kind::kDiscrete: {
      // Number of offsets <= v.
      const auto count = std::upper_bound(offsets_.begin(), offsets_.end(), v) -
                         offsets_.begin();
      return count == 0 ? 0.0 : cumulative_[count - 1];
    }
  }
  return 0.0;
}

double Distribution::CdfBelow(double v) const {
  if (kind_ != Kind::kDiscrete) return Cdf(v);
  if (std::isnan(v)) DomainError("CDF evaluated at NaN");
  // Number of offsets < v.
  const auto count =
      std::lower_bound(offsets_.begin(), offsets_.end(), v) - offsets_.begin();
  return count == 0 ? 0.0 : cumulative_[count - 1];
}

double Distribution::IntervalProbability(double x, double lower,
                                         double upper) const {
  if (!(lower < upper)) return 0.0;
  return std::max(0.0, CdfBelow(upper - x) - CdfBelow(lower - x));
}

double Distribution::InverseCdf(double u) const {
  if (!(u > 0.0 && u < 1.0)) DomainError("inverse CDF requires 0 < u < 1");
  switch (kind_) {
    case Kind::kGaussian:
      return scale_ * NormalQuantile(u);
    case Kind::kUniform:
      return scale_ * (2.0 * u - 1.0);
    case Kind::kDiscrete: {
      const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
      return offsets_[std::min<size_t>(it - cumulative_.begin(), offsets_.size() - 1)];
    }
  }
  return 0.0;
}

double Distribution::Sample(Rng& rng) const {
  return InverseCdf(UniformOpen01(rng));
}

std::string Distribution::ToString() const {
  std::ostringstream out;
  out.precision(17);
  switch (kind_) {
    case Kind::kGaussian:
      out << "gaussian(sigma=" << scale_ << ")";
      break;
    case Kind::kUniform:
      out << "uniform(half_width=" << scale_ << ")";
      break;
    case Kind::kDiscrete:
      out << "discrete{";
      for (size_t i = 0; i < offsets_.size(); ++i) {
        if (i > 0) out << ", ";
        out << "(" << offsets_[i] << ", " << probabilities_[i] << ")";
      }
      out << "}";
      break;
  }
  return out.str();
}

PerturbationSpec PerturbationSpec::Shared(const Distribution& dist,
                                          int num_features) {
  return PerturbationSpec(
      std::vector<std::optional<Distribution>>(num_features, dist));
}

PerturbationSpec::PerturbationSpec(
    std::vector<std::optional<Distribution>> per_feature)
    : per_feature_(std::move(per_feature)) {}

bool PerturbationSpec::Covers(int feature) const {
  return feature >= 0 && feature < num_features() &&
         per_feature_[feature].has_value();
}

const Distribution& PerturbationSpec::For(int feature) const {
  if (!Covers(feature)) {
    Fail(ErrorKind::kInvalidArgument,
         "feature " + std::to_string(feature) + " has no perturbation distribution");
  }
  return *per_feature_[feature];
}

namespace {

Distribution ParseDistribution(const nlohmann::json& json, const std::string& where) {
  if (!json.is_object() || !json.contains("kind") || !json["kind"].is_string()) {
    Fail(ErrorKind::kFormat, where + ": distribution needs a string \"kind\"");
  }
  const std::string kind = json["kind"].get<std::string>();
  auto number = [&](const char* key) {
    if (!json.contains(key) || !json[key].is_number()) {
      Fail(ErrorKind::kFormat, where + ": expected numeric \"" + key + "\"");
    }
    return json[key].get<double>();
  };
  if (kind == "gaussian") return Distribution::Gaussian(number("sigma"));
  if (kind == "uniform") return Distribution::Uniform(number("half_width"));
  if (kind == "discrete") {
    if (!json.contains("points") || !json["points"].is_array()) {
      Fail(ErrorKind::kFormat, where + ": discrete needs a \"points\" array");
    }
    std::vector<std::pair<double, double>> points;
    for (const auto& point : json["points"]) {
      if (!point.is_array() || point.size() != 2 || !point[0].is_number() ||
          !point[1].is_number()) {
        Fail(ErrorKind::kFormat, where + ": points must be [offset, probability]");
      }
      points.emplace_back(point[0].get<double>(), point[1].get<double>());
    }
    return Distribution::Discrete(std::move(points));
  }
  Fail(ErrorKind::kFormat, where + ": unknown distribution kind \"" + kind + "\"");
}

}  // namespace

PerturbationSpec ParsePerturbationConfig(std::string_view json_text,
                                         int num_features) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(json_text.begin(), json_text.end());
  } catch (const nlohmann::json::parse_error& e) {
    Fail(ErrorKind::kFormat, std::string("perturbation config: ") + e.what());
  }
  if (root.contains("distribution")) {
    return PerturbationSpec::Shared(
        ParseDistribution(root["distribution"], "distribution"), num_features);
  }
  if (root.contains("per_feature") && root["per_feature"].is_array()) {
    const auto& list = root["per_feature"];
    if (static_cast<int>(list.size()) != num_features) {
      Fail(ErrorKind::kValidation,
           "perturbation config lists " + std::to_string(list.size()) +
               " features, model has " + std::to_string(num_features));
    }
    std::vector<std::optional<Distribution>> per_feature;
    for (size_t i = 0; i < list.size(); ++i) {
      if (list[i].is_null()) {
        per_feature.emplace_back(std::nullopt);
      } else {
        per_feature.emplace_back(
            ParseDistribution(list[i], "per_feature[" + std::to_string(i) + "]"));
      }
    }
    return PerturbationSpec(std::move(per_feature));
  }
  Fail(ErrorKind::kFormat,
       "perturbation config needs \"distribution\" or \"per_feature\"");
}

}  // namespace pg2
