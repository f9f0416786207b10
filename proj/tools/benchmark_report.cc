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

#include "benchmark_report.h"

#include <chrono>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#ifdef PG2_VENDORED_JSON
#include "json.hpp"
#else
#include <nlohmann/json.hpp>
#endif

#include "pg2/error.h"
#include "pg2/exact.h"
#include "pg2/format.h"
#include "pg2/metrics.h"
#include "pg2/parallel.h"
#include "pg2/perturb.h"
#include "pg2/random.h"

namespace pg2::tools {
namespace {

using Clock = std::chrono::steady_clock;
using Json = nlohmann::ordered_json;

double Seconds(Clock::duration d) {
  return std::chrono::duration<double>(d).count();
}

double Sum(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum;
}

}  // namespace

BenchmarkReport RunBenchmark(const TreeEnsemble& ensemble, const Dataset& dataset,
                             const BenchmarkConfig& config, std::ostream& log) {
  const int d = ensemble.num_features();
  if (config.iterations.empty()) {
    Fail(ErrorKind::kInvalidArgument, "iteration grid is empty");
  }
  if (config.repetitions < 1) {
    Fail(ErrorKind::kInvalidArgument, "repetitions must be at least 1");
  }
  const std::vector<PairSample> pairs =
      SamplePairs(dataset.size(), d, config.pairs, DeriveSeed(config.seed, 0),
                  config.subset_sizes);
  const int n = static_cast<int>(pairs.size());

  BenchmarkReport report;
  report.num_trees = ensemble.num_trees();
  report.num_nodes = ensemble.node_count();
  report.num_features = d;
  report.seed = config.seed;
  report.pairs = n;
  report.repetitions = config.repetitions;

  std::vector<double> truth(n);
  std::vector<double> estimate(n);
  std::vector<double> seconds(n);
  for (double sigma : config.sigmas) {
    const PerturbationSpec spec = PerturbationSpec::Shared(Distribution::Gaussian(sigma), d);
    ParallelFor(n, config.threads, [&](int j) {
      const auto start = Clock::now();
      truth[j] = Pg2Exact(ensemble, dataset.row(pairs[j].instance_index),
                          pairs[j].features, spec);
      seconds[j] = Seconds(Clock::now() - start);
    });
    const double exact_time = Sum(seconds);
    double truth_norm = 0.0;
    for (double v : truth) truth_norm += std::fabs(v);
    if (truth_norm == 0.0) {
      log << "warning: every exact value is zero at sigma " << FormatReal(sigma)
          << "; NMAE undefined, sigma excluded from the report\n";
      report.excluded_sigmas.push_back(sigma);
      continue;
    }
    for (SamplingMethod method : config.methods) {
      // The quasi-random estimate does not depend on the seed.
      const int repetitions =
          method == SamplingMethod::kQuasiMonteCarlo ? 1 : config.repetitions;
      for (int64_t iterations : config.iterations) {
        double nmae_sum = 0.0;
        double sampler_time = 0.0;
        for (int rep = 0; rep < repetitions; ++rep) {
          const uint64_t rep_seed = DeriveSeed(config.seed, 1 + static_cast<uint64_t>(rep));
          ParallelFor(n, config.threads, [&](int j) {
            EstimatorConfig estimator{method, iterations,
                                      DeriveSeed(rep_seed, static_cast<uint64_t>(j))};
            const auto start = Clock::now();
            estimate[j] = Pg2Sampled(ensemble, dataset.row(pairs[j].instance_index),
                                     pairs[j].features, spec, estimator);
            seconds[j] = Seconds(Clock::now() - start);
          });
          nmae_sum += Nmae(truth, estimate);
          sampler_time += Sum(seconds);
        }
        report.rows.push_back({method, iterations, sigma, nmae_sum / repetitions,
                               exact_time, sampler_time / repetitions, n});
      }
    }
  }
  return report;
}

std::string BenchmarkReportJson(const BenchmarkReport& report) {
  Json root;
  root["model"] = {{"trees", report.num_trees},
                   {"nodes", report.num_nodes},
                   {"num_features", report.num_features}};
  root["seed"] = report.seed;
  root["pairs"] = report.pairs;
  root["repetitions"] = report.repetitions;
  Json rows = Json::array();
  for (const BenchmarkRow& row : report.rows) {
    rows.push_back({{"method", std::string(SamplingMethodName(row.method))},
                    {"iterations", row.iterations},
                    {"sigma", RoundSignificant(row.sigma)},
                    {"nmae", RoundSignificant(row.nmae)},
                    {"pairs", row.pairs}});
  }
  root["results"] = std::move(rows);
  Json excluded = Json::array();
  for (double sigma : report.excluded_sigmas) excluded.push_back(RoundSignificant(sigma));
  root["excluded_sigmas"] = std::move(excluded);
  return root.dump(2) + "\n";
}

BenchmarkReport BenchmarkReportFromJson(std::string_view text) {
  BenchmarkReport report;
  try {
    const Json root = Json::parse(text);
    report.num_trees = root.at("model").at("trees").get<int>();
    report.num_nodes = root.at("model").at("nodes").get<int>();
    report.num_features = root.at("model").at("num_features").get<int>();
    report.seed = root.at("seed").get<uint64_t>();
    report.pairs = root.at("pairs").get<int>();
    report.repetitions = root.at("repetitions").get<int>();
    for (const Json& row : root.at("results")) {
      report.rows.push_back({ParseSamplingMethod(row.at("method").get<std::string>()),
                             row.at("iterations").get<int64_t>(),
                             row.at("sigma").get<double>(),
                             row.at("nmae").get<double>(), 0.0, 0.0,
                             row.at("pairs").get<int>()});
    }
    for (const Json& sigma : root.at("excluded_sigmas")) {
      report.excluded_sigmas.push_back(sigma.get<double>());
    }
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorKind::kFormat, std::string("benchmark report: ") + e.what());
  }
  return report;
}

std::string BenchmarkTimingsJson(const BenchmarkReport& report) {
  Json root;
  Json rows = Json::array();
  for (const BenchmarkRow& row : report.rows) {
    rows.push_back({{"method", std::string(SamplingMethodName(row.method))},
                    {"iterations", row.iterations},
                    {"sigma", RoundSignificant(row.sigma)},
                    {"nmae", RoundSignificant(row.nmae)},
                    {"wall_time_exact", RoundSignificant(row.wall_time_exact)},
                    {"wall_time_sampler", RoundSignificant(row.wall_time_sampler)},
                    {"pairs", row.pairs}});
  }
  root["results"] = std::move(rows);

  // Grid point whose sampler time best matches the exact time, per
  // (method, sigma) group; rows of a group are contiguous.
  Json matched = Json::array();
  for (size_t begin = 0; begin < report.rows.size();) {
    size_t end = begin;
    size_t best = begin;
    double best_gap = std::numeric_limits<double>::infinity();
    while (end < report.rows.size() && report.rows[end].method == report.rows[begin].method &&
           report.rows[end].sigma == report.rows[begin].sigma) {
      const double gap =
          std::fabs(report.rows[end].wall_time_sampler - report.rows[end].wall_time_exact);
      if (gap < best_gap) {
        best_gap = gap;
        best = end;
      }
      ++end;
    }
    const BenchmarkRow& row = report.rows[best];
    matched.push_back({{"method", std::string(SamplingMethodName(row.method))},
                       {"sigma", RoundSignificant(row.sigma)},
                       {"iterations", row.iterations},
                       {"nmae", RoundSignificant(row.nmae)},
                       {"wall_time_exact", RoundSignificant(row.wall_time_exact)},
                       {"wall_time_sampler", RoundSignificant(row.wall_time_sampler)}});
    begin = end;
  }
  root["time_matched"] = std::move(matched);
  return root.dump(2) + "\n";
}

std::string BenchmarkCsv(const BenchmarkReport& report) {
  std::string out = "method,iterations,sigma,nmae\n";
  for (const BenchmarkRow& row : report.rows) {
    out += std::string(SamplingMethodName(row.method)) + "," +
           std::to_string(row.iterations) + "," + FormatReal(row.sigma) + "," +
           FormatReal(row.nmae) + "\n";
  }
  return out;
}

}  // namespace pg2::tools
