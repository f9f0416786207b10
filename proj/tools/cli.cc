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

#include "cli.h"

#include <CLI11.hpp>

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "benchmark_report.h"
#include "pg2/data.h"
#include "pg2/error.h"
#include "pg2/exact.h"
#include "pg2/feature_set.h"
#include "pg2/format.h"
#include "pg2/metrics.h"
#include "pg2/model.h"
#include "pg2/parallel.h"
#include "pg2/perturb.h"
#include "pg2/ranking.h"
#include "pg2/sampling.h"

namespace pg2::tools {
namespace {

// ---------------------------------------------------------------------------
// List flags

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    const size_t begin = item.find_first_not_of(" \t");
    if (begin == std::string::npos) continue;
    items.push_back(item.substr(begin, item.find_last_not_of(" \t") - begin + 1));
  }
  return items;
}

template <typename T>
std::vector<T> ParseNumberList(const std::string& text, const char* flag) {
  std::vector<T> values;
  for (const std::string& item : SplitList(text)) {
    std::istringstream stream(item);
    T value{};
    if (!(stream >> value) || !stream.eof()) {
      Fail(ErrorKind::kInvalidArgument,
           std::string("--") + flag + ": cannot parse \"" + item + "\"");
    }
    values.push_back(value);
  }
  return values;
}

// ---------------------------------------------------------------------------
// Shared flag groups

struct ModelFlags {
  std::string path;
  std::string format = "canonical";
  int num_features = 0;
  std::string feature_names;
  double base_score = 0.0;

  void Add(CLI::App* app, bool required) {
    auto* option = app->add_option("--model", path, "Model file");
    if (required) option->required();
    app->add_option("--model-format", format, "canonical | xgboost-dump")
        ->check(CLI::IsMember({"canonical", "xgboost-dump"}));
    app->add_option("--num-features", num_features,
                    "Feature count for XGBoost dumps (default: inferred)");
    app->add_option("--feature-names", feature_names,
                    "Comma-separated split names for XGBoost dumps");
    app->add_option("--base-score", base_score,
                    "XGBoost global bias, added as a single-leaf tree");
  }

  XgboostImportOptions ImportOptions() const {
    XgboostImportOptions options;
    options.num_features = num_features;
    options.feature_names = SplitList(feature_names);
    options.base_score = base_score;
    return options;
  }

  TreeEnsemble Load() const {
    return LoadEnsemble(path, ParseModelFormat(format), ImportOptions());
  }
};

struct DataFlags {
  std::string path;
  std::string label_column;
  std::string drop_columns;
  std::string standardize_params;

  void Add(CLI::App* app, bool required) {
    auto* option = app->add_option("--data", path, "CSV dataset with a header row");
    if (required) option->required();
    app->add_option("--label-column", label_column,
                    "Target column, excluded from the features");
    app->add_option("--drop-columns", drop_columns,
                    "Comma-separated columns to ignore");
    app->add_option("--standardize-params", standardize_params,
                    "Standardization sidecar JSON to apply on load");
  }

  LabeledDataset Load(int expected_features) const {
    CsvOptions options;
    if (!label_column.empty()) options.label_column = label_column;
    options.drop_columns = SplitList(drop_columns);
    LabeledDataset data = LoadCsv(path, options);
    if (!standardize_params.empty()) {
      data.features = Standardize(
          data.features, StandardizationParams::FromJson(ReadFile(standardize_params)));
    }
    if (expected_features >= 0 && data.features.num_features() != expected_features) {
      Fail(ErrorKind::kValidation,
           path + ": " + std::to_string(data.features.num_features()) +
               " feature columns, model expects " + std::to_string(expected_features));
    }
    return data;
  }
};

PerturbationSpec MakeSpec(double sigma, const std::string& config_path,
                          int num_features) {
  if (!config_path.empty()) {
    return ParsePerturbationConfig(ReadFile(config_path), num_features);
  }
  return PerturbationSpec::Shared(Distribution::Gaussian(sigma), num_features);
}

enum class RankMethod { kGreedyPg2, kFromAttribution };

RankMethod ParseRankMethod(const std::string& name) {
  if (name == "greedy-pg2") return RankMethod::kGreedyPg2;
  if (name == "from-attribution") return RankMethod::kFromAttribution;
  Fail(ErrorKind::kInvalidArgument, "unknown ranking method \"" + name + "\"");
}

std::vector<Ranking> GreedyRankings(const TreeEnsemble& ensemble,
                                    const Dataset& dataset,
                                    const PerturbationSpec& spec, int threads) {
  std::vector<Ranking> rankings(dataset.size());
  ParallelFor(dataset.size(), threads, [&](int i) {
    rankings[i] = GreedyPg2Ranking(ensemble, dataset.row(i), spec);
  });
  return rankings;
}

std::vector<Ranking> AttributionRankings(const std::string& path, int num_features,
                                         std::optional<int> expected_rows) {
  if (path.empty()) {
    Fail(ErrorKind::kInvalidArgument, "--attribution is required for from-attribution");
  }
  const auto phi = LoadAttributions(path, num_features);
  if (expected_rows && static_cast<int>(phi.size()) != *expected_rows) {
    Fail(ErrorKind::kValidation, path + ": " + std::to_string(phi.size()) +
                                     " attribution rows, dataset has " +
                                     std::to_string(*expected_rows));
  }
  std::vector<Ranking> rankings;
  rankings.reserve(phi.size());
  for (const auto& row : phi) rankings.push_back(RankingFromAttribution(row));
  return rankings;
}

// ---------------------------------------------------------------------------
// pg2

struct Pg2Flags {
  ModelFlags model;
  DataFlags data;
  int point = 0;
  std::string x_values;
  std::string features;
  double sigma = 1.0;
  std::string perturbation;
  std::string method = "exact";
  int64_t iterations = 10000;
  uint64_t seed = 0;
  bool absolute = false;
};

void RunPg2(const Pg2Flags& flags, std::ostream& out) {
  const TreeEnsemble ensemble = flags.model.Load();
  FeatureVector x;
  if (!flags.x_values.empty()) {
    x = ParseNumberList<double>(flags.x_values, "x");
  } else if (!flags.data.path.empty()) {
    const LabeledDataset data = flags.data.Load(ensemble.num_features());
    if (flags.point < 0 || flags.point >= data.features.size()) {
      Fail(ErrorKind::kInvalidArgument,
           "--point " + std::to_string(flags.point) + " outside the dataset");
    }
    x = data.features.row(flags.point);
  } else {
    Fail(ErrorKind::kInvalidArgument, "one of --data or --x is required");
  }
  const FeatureSet perturbed = ParseFeatureSet(flags.features);
  const PerturbationSpec spec =
      MakeSpec(flags.sigma, flags.perturbation, ensemble.num_features());

  double value = 0.0;
  if (flags.method == "exact") {
    if (flags.absolute) {
      Fail(ErrorKind::kInvalidArgument,
           "the absolute gap has no exact algorithm; use --method mc or qmc");
    }
    value = Pg2Exact(ensemble, x, perturbed, spec);
  } else {
    const EstimatorConfig config{ParseSamplingMethod(flags.method), flags.iterations,
                                 flags.seed};
    value = flags.absolute ? PgAbsSampled(ensemble, x, perturbed, spec, config)
                           : Pg2Sampled(ensemble, x, perturbed, spec, config);
  }
  out << FormatReal(value) << "\n";
}

// ---------------------------------------------------------------------------
// rank

struct RankFlags {
  ModelFlags model;
  DataFlags data;
  std::string method = "greedy-pg2";
  std::string attribution;
  double sigma = 1.0;
  std::string perturbation;
  int threads = 0;
};

void RunRank(const RankFlags& flags, std::ostream& out) {
  const RankMethod method = ParseRankMethod(flags.method);
  std::vector<Ranking> rankings;
  if (method == RankMethod::kGreedyPg2) {
    if (flags.model.path.empty() || flags.data.path.empty()) {
      Fail(ErrorKind::kInvalidArgument, "greedy-pg2 needs --model and --data");
    }
    const TreeEnsemble ensemble = flags.model.Load();
    const LabeledDataset data = flags.data.Load(ensemble.num_features());
    const PerturbationSpec spec =
        MakeSpec(flags.sigma, flags.perturbation, ensemble.num_features());
    rankings = GreedyRankings(ensemble, data.features, spec, flags.threads);
  } else {
    // The attribution rows fix d; a dataset, when given, fixes the row count.
    std::optional<int> rows;
    int d = -1;
    if (!flags.data.path.empty()) {
      const LabeledDataset data = flags.data.Load(-1);
      rows = data.features.size();
      d = data.features.num_features();
    }
    rankings = AttributionRankings(flags.attribution, d, rows);
  }
  out << RankingsToCsv(rankings);
}

// ---------------------------------------------------------------------------
// benchmark

struct BenchmarkFlags {
  ModelFlags model;
  DataFlags data;
  std::string sigmas = "0.1,0.3,1.0";
  std::string iterations;
  std::string methods = "mc,qmc";
  std::string subset_sizes;
  int pairs = kDefaultPairs;
  int repetitions = 1;
  uint64_t seed = 0;
  int threads = 0;
  std::string out_path;
  std::string timings_path;
  std::string csv_path;
};

void RunBenchmarkCommand(const BenchmarkFlags& flags, std::ostream& out,
                         std::ostream& err) {
  const TreeEnsemble ensemble = flags.model.Load();
  const LabeledDataset data = flags.data.Load(ensemble.num_features());
  BenchmarkConfig config;
  config.sigmas = ParseNumberList<double>(flags.sigmas, "sigmas");
  if (!flags.iterations.empty()) {
    config.iterations = ParseNumberList<int64_t>(flags.iterations, "iterations");
  }
  config.methods.clear();
  for (const std::string& name : SplitList(flags.methods)) {
    config.methods.push_back(ParseSamplingMethod(name));
  }
  config.subset_sizes = ParseNumberList<int>(flags.subset_sizes, "subset-sizes");
  config.pairs = flags.pairs;
  config.repetitions = flags.repetitions;
  config.seed = flags.seed;
  config.threads = flags.threads;
  if (config.sigmas.empty()) Fail(ErrorKind::kInvalidArgument, "--sigmas is empty");

  const BenchmarkReport report = RunBenchmark(ensemble, data.features, config, err);
  if (!flags.out_path.empty()) WriteFile(flags.out_path, BenchmarkReportJson(report));
  if (!flags.timings_path.empty()) {
    WriteFile(flags.timings_path, BenchmarkTimingsJson(report));
  }
  if (!flags.csv_path.empty()) WriteFile(flags.csv_path, BenchmarkCsv(report));
  out << BenchmarkCsv(report);
}

// ---------------------------------------------------------------------------
// eval

struct EvalFlags {
  ModelFlags model;
  DataFlags data;
  std::string rankings_path;
  std::string method = "greedy-pg2";
  std::string attribution;
  double sigma_rank = 1.0;
  std::optional<double> sigma_metric;
  std::string perturbation;
  std::string metric = "pgi2";
  std::string k = "1";
  int samples = kDefaultRandomizationSamples;
  uint64_t seed = 0;
  std::string rmse_target = "prediction";
  int threads = 0;
};

void RunEval(const EvalFlags& flags, std::ostream& out) {
  const TreeEnsemble ensemble = flags.model.Load();
  const LabeledDataset data = flags.data.Load(ensemble.num_features());
  const int d = ensemble.num_features();

  std::vector<Ranking> rankings;
  if (!flags.rankings_path.empty()) {
    rankings = ParseRankingsCsv(ReadFile(flags.rankings_path), d);
    if (static_cast<int>(rankings.size()) != data.features.size()) {
      Fail(ErrorKind::kValidation, flags.rankings_path + ": " +
                                       std::to_string(rankings.size()) +
                                       " rankings, dataset has " +
                                       std::to_string(data.features.size()) + " rows");
    }
  } else if (ParseRankMethod(flags.method) == RankMethod::kGreedyPg2) {
    const PerturbationSpec rank_spec = MakeSpec(flags.sigma_rank, flags.perturbation, d);
    rankings = GreedyRankings(ensemble, data.features, rank_spec, flags.threads);
  } else {
    rankings = AttributionRankings(flags.attribution, d, data.features.size());
  }

  if (flags.metric == "pgi2") {
    const PerturbationSpec metric_spec =
        MakeSpec(flags.sigma_metric.value_or(flags.sigma_rank), flags.perturbation, d);
    out << FormatReal(MeanPgi2(ensemble, data.features, rankings, metric_spec,
                               flags.threads))
        << "\n";
    return;
  }
  if (flags.metric != "randomize-rmse") {
    Fail(ErrorKind::kInvalidArgument, "unknown metric \"" + flags.metric + "\"");
  }
  RandomizationOptions options;
  options.samples = flags.samples;
  options.seed = flags.seed;
  options.threads = flags.threads;
  if (flags.rmse_target == "label") {
    if (!data.labels) {
      Fail(ErrorKind::kInvalidArgument, "--rmse-target label needs --label-column");
    }
    options.target = RmseTarget::kLabel;
    options.labels = *data.labels;
  } else if (flags.rmse_target != "prediction") {
    Fail(ErrorKind::kInvalidArgument,
         "unknown --rmse-target \"" + flags.rmse_target + "\"");
  }
  for (int k : ParseNumberList<int>(flags.k, "k")) {
    out << FormatReal(RandomizationRmse(ensemble, data.features, rankings, k, options))
        << "\n";
  }
}

// ---------------------------------------------------------------------------
// convert-model

struct ConvertFlags {
  ModelFlags model;
  std::string output;
};

void RunConvert(const ConvertFlags& flags, std::ostream& out) {
  ModelFlags input = flags.model;
  input.format = "xgboost-dump";
  const TreeEnsemble ensemble = input.Load();
  if (flags.output.empty()) {
    out << ToCanonicalJson(ensemble);
  } else {
    SaveEnsemble(ensemble, flags.output);
  }
}

// ---------------------------------------------------------------------------
// prepare

struct PrepareFlags {
  DataFlags data;
  double ratio = 0.8;
  uint64_t seed = 0;
  std::string train_out;
  std::string test_out;
  std::string params_out;
};

void RunPrepare(const PrepareFlags& flags, std::ostream& out) {
  const LabeledDataset data = flags.data.Load(-1);
  const auto [train_index, test_index] =
      SplitIndices(data.features.size(), flags.ratio, flags.seed);
  const Dataset train_raw = data.features.Subset(train_index);
  const StandardizationParams params = FitStandardization(train_raw);
  auto labels_of = [&](const std::vector<int>& index) {
    std::optional<std::vector<double>> labels;
    if (data.labels) {
      labels.emplace();
      for (int i : index) labels->push_back((*data.labels)[i]);
    }
    return labels;
  };
  const std::string label_name =
      flags.data.label_column.empty() ? "label" : flags.data.label_column;
  WriteFile(flags.train_out,
            ToCsv(Standardize(train_raw, params), labels_of(train_index), label_name));
  WriteFile(flags.test_out, ToCsv(Standardize(data.features.Subset(test_index), params),
                                  labels_of(test_index), label_name));
  if (!flags.params_out.empty()) WriteFile(flags.params_out, params.ToJson());
  out << "train " << train_index.size() << " rows, test " << test_index.size()
      << " rows\n";
}

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument:
      return kExitUsage;
    case ErrorKind::kFormat:
    case ErrorKind::kValidation:
      return kExitValidation;
    case ErrorKind::kNumericDomain:
    case ErrorKind::kCapacity:
      return kExitNumeric;
  }
  return 1;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Squared prediction gap (PG2 / PGI2) for tree ensembles", "pg2"};
  app.require_subcommand(1);

  Pg2Flags pg2;
  CLI::App* pg2_cmd = app.add_subcommand("pg2", "Compute PG2(x, S) for one instance");
  pg2.model.Add(pg2_cmd, true);
  pg2.data.Add(pg2_cmd, false);
  pg2_cmd->add_option("--point", pg2.point, "0-based dataset row");
  pg2_cmd->add_option("--x", pg2.x_values, "Comma-separated feature values");
  pg2_cmd->add_option("--features", pg2.features,
                      "Comma-separated perturbed features (empty for none)")
      ->required();
  pg2_cmd->add_option("--sigma", pg2.sigma, "Gaussian noise scale");
  pg2_cmd->add_option("--perturbation", pg2.perturbation,
                      "Perturbation config JSON (overrides --sigma)");
  pg2_cmd->add_option("--method", pg2.method, "exact | mc | qmc")
      ->check(CLI::IsMember({"exact", "mc", "qmc"}));
  pg2_cmd->add_option("--iterations", pg2.iterations, "Sampler iterations");
  pg2_cmd->add_option("--seed", pg2.seed, "Monte Carlo seed");
  pg2_cmd->add_flag("--absolute", pg2.absolute,
                    "Estimate E|f(x')-f(x)| instead of the squared gap");

  RankFlags rank;
  CLI::App* rank_cmd = app.add_subcommand("rank", "Per-instance feature rankings (CSV)");
  rank.model.Add(rank_cmd, false);
  rank.data.Add(rank_cmd, false);
  rank_cmd->add_option("--method", rank.method, "greedy-pg2 | from-attribution")
      ->check(CLI::IsMember({"greedy-pg2", "from-attribution"}));
  rank_cmd->add_option("--attribution", rank.attribution,
                       "Attribution vectors, CSV or JSON array of arrays");
  rank_cmd->add_option("--sigma", rank.sigma, "Gaussian noise scale");
  rank_cmd->add_option("--perturbation", rank.perturbation, "Perturbation config JSON");
  rank_cmd->add_option("--threads", rank.threads, "Worker threads (0: all cores)");

  BenchmarkFlags bench;
  CLI::App* bench_cmd =
      app.add_subcommand("benchmark", "NMAE of MC/QMC against the exact algorithm");
  bench.model.Add(bench_cmd, true);
  bench.data.Add(bench_cmd, true);
  bench_cmd->add_option("--sigmas", bench.sigmas, "Comma-separated noise scales");
  bench_cmd->add_option("--iterations", bench.iterations,
                        "Comma-separated iteration grid (default 100..35000)");
  bench_cmd->add_option("--methods", bench.methods, "Comma-separated: mc, qmc");
  bench_cmd->add_option("--subset-sizes", bench.subset_sizes,
                        "Comma-separated subset sizes to cycle (default 1..d)");
  bench_cmd->add_option("--pairs", bench.pairs, "Number of (x, S) pairs");
  bench_cmd->add_option("--repetitions", bench.repetitions,
                        "Monte Carlo repetitions averaged per grid point");
  bench_cmd->add_option("--seed", bench.seed, "Seed for pairs and sampler streams");
  bench_cmd->add_option("--threads", bench.threads, "Worker threads (0: all cores)");
  bench_cmd->add_option("--out", bench.out_path, "Report JSON (deterministic)");
  bench_cmd->add_option("--timings-out", bench.timings_path,
                        "Timing JSON with wall times and time-matched grid points");
  bench_cmd->add_option("--csv", bench.csv_path, "Plot CSV: method,iterations,sigma,nmae");

  EvalFlags eval;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Dataset-level ranking metrics");
  eval.model.Add(eval_cmd, true);
  eval.data.Add(eval_cmd, true);
  eval_cmd->add_option("--rankings", eval.rankings_path,
                       "Rankings CSV (as printed by `pg2 rank`)");
  eval_cmd->add_option("--method", eval.method,
                       "Ranking source without --rankings: greedy-pg2 | from-attribution")
      ->check(CLI::IsMember({"greedy-pg2", "from-attribution"}));
  eval_cmd->add_option("--attribution", eval.attribution, "Attribution vectors");
  eval_cmd->add_option("--sigma-rank,--sigma", eval.sigma_rank,
                       "Noise scale used to build greedy rankings");
  eval_cmd->add_option("--sigma-metric", eval.sigma_metric,
                       "Noise scale used by PGI2 (default: --sigma-rank)");
  eval_cmd->add_option("--perturbation", eval.perturbation, "Perturbation config JSON");
  eval_cmd->add_option("--metric", eval.metric, "pgi2 | randomize-rmse")
      ->check(CLI::IsMember({"pgi2", "randomize-rmse"}));
  eval_cmd->add_option("--k", eval.k,
                       "Comma-separated numbers of top features to randomize");
  eval_cmd->add_option("--samples", eval.samples, "Draws per instance for randomization");
  eval_cmd->add_option("--seed", eval.seed, "Seed for randomization draws");
  eval_cmd->add_option("--rmse-target", eval.rmse_target, "prediction | label")
      ->check(CLI::IsMember({"prediction", "label"}));
  eval_cmd->add_option("--threads", eval.threads, "Worker threads (0: all cores)");

  ConvertFlags convert;
  CLI::App* convert_cmd = app.add_subcommand(
      "convert-model", "Convert an XGBoost JSON dump to the canonical format");
  convert_cmd->add_option("--input,--model", convert.model.path, "XGBoost JSON dump")
      ->required();
  convert_cmd->add_option("--num-features", convert.model.num_features,
                          "Feature count (default: inferred)");
  convert_cmd->add_option("--feature-names", convert.model.feature_names,
                          "Comma-separated split names");
  convert_cmd->add_option("--base-score", convert.model.base_score,
                          "Global bias, added as a single-leaf tree");
  convert_cmd->add_option("--output,--out", convert.output,
                          "Canonical model path (default: stdout)");

  PrepareFlags prepare;
  CLI::App* prepare_cmd = app.add_subcommand(
      "prepare", "Split a CSV and standardize it with training-split statistics");
  prepare.data.Add(prepare_cmd, true);
  prepare_cmd->add_option("--ratio", prepare.ratio, "Training fraction");
  prepare_cmd->add_option("--seed", prepare.seed, "Shuffle seed");
  prepare_cmd->add_option("--train-out", prepare.train_out, "Standardized training CSV")
      ->required();
  prepare_cmd->add_option("--test-out", prepare.test_out, "Standardized test CSV")
      ->required();
  prepare_cmd->add_option("--params-out", prepare.params_out,
                          "Standardization sidecar JSON");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& arg : args) argv.push_back(arg.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (pg2_cmd->parsed()) RunPg2(pg2, out);
    if (rank_cmd->parsed()) RunRank(rank, out);
    if (bench_cmd->parsed()) RunBenchmarkCommand(bench, out, err);
    if (eval_cmd->parsed()) RunEval(eval, out);
    if (convert_cmd->parsed()) RunConvert(convert, out);
    if (prepare_cmd->parsed()) RunPrepare(prepare, out);
  } catch (const Error& e) {
    err << "pg2: " << e.what() << "\n";
    return ExitCodeFor(e.kind());
  } catch (const std::exception& e) {
    err << "pg2: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}

}  // namespace pg2::tools
