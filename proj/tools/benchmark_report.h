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

#ifndef PG2_TOOLS_BENCHMARK_REPORT_H_
#define PG2_TOOLS_BENCHMARK_REPORT_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "pg2/data.h"
#include "pg2/model.h"
#include "pg2/sampling.h"

namespace pg2::tools {

// Iteration counts swept by default.
inline const std::vector<int64_t> kDefaultIterationGrid = {
    100,   500,   1000,  2000,  4000,  6000,  8000,
    10000, 15000, 20000, 25000, 30000, 35000};
inline constexpr int kDefaultPairs = 20000;

struct BenchmarkConfig {
  std::vector<double> sigmas = {0.1, 0.3, 1.0};
  std::vector<int64_t> iterations = kDefaultIterationGrid;
  std::vector<SamplingMethod> methods = {SamplingMethod::kMonteCarlo,
                                         SamplingMethod::kQuasiMonteCarlo};
  int pairs = kDefaultPairs;
  // Optional subset sizes to cycle through; empty means 1..d.
  std::vector<int> subset_sizes;
  int repetitions = 1;
  uint64_t seed = 0;
  int threads = 0;
};

// One (method, iterations, sigma) cell. Wall times are summed per-pair
// compute times in seconds (file I/O excluded), so they do not depend on the
// worker count; only their ratios are meaningful across machines.
struct BenchmarkRow {
  SamplingMethod method;
  int64_t iterations;
  double sigma;
  double nmae;
  double wall_time_exact;
  double wall_time_sampler;
  int pairs;
};

struct BenchmarkReport {
  int num_trees = 0;
  int num_nodes = 0;
  int num_features = 0;
  uint64_t seed = 0;
  int pairs = 0;
  int repetitions = 1;
  std::vector<BenchmarkRow> rows;
  // Sigmas whose exact values were all zero, so NMAE was undefined.
  std::vector<double> excluded_sigmas;
};

// Runs exact, MC and QMC on the same sampled (instance, subset) pairs.
// Warnings (excluded sigmas) go to `log`.
BenchmarkReport RunBenchmark(const TreeEnsemble& ensemble, const Dataset& dataset,
                             const BenchmarkConfig& config, std::ostream& log);

// Deterministic report (no timings) and the timing sidecar, which also lists
// for each (method, sigma) the grid point whose sampler time is closest to
// the exact algorithm's.
std::string BenchmarkReportJson(const BenchmarkReport& report);
std::string BenchmarkTimingsJson(const BenchmarkReport& report);
// Inverse of BenchmarkReportJson; wall times come back as zero.
BenchmarkReport BenchmarkReportFromJson(std::string_view text);
// Plot-ready rows: method,iterations,sigma,nmae.
std::string BenchmarkCsv(const BenchmarkReport& report);

}  // namespace pg2::tools

#endif  // PG2_TOOLS_BENCHMARK_REPORT_H_
