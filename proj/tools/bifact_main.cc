// Copyright 2026 The bifact Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// bifact: factorize -> evaluate -> calibrate -> report.
//
// Exit codes: 0 success, 1 runtime failure (backend, parse, I/O, or any
// record skipped with --skip-failures), 2 usage or contract violation.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bifact/error.h"
#include "bifact/io.h"
#include "bifact/pipeline.h"

namespace {

struct CommonFlags {
  std::string config;
  std::string cache_dir;
  std::string templates_dir;
  bool no_cache = false;
  bool force = false;
  std::optional<std::uint64_t> seed;
  std::optional<int> parallelism;
  bool dry_run = false;
  bool skip_failures = false;
  bool empty_prediction_zero = false;
  bool quiet = false;
  std::vector<std::string> metrics;
};

void AddCommonFlags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "JSON run configuration");
  cmd->add_option("--cache-dir", f.cache_dir, "Judge response cache directory");
  cmd->add_option("--templates-dir", f.templates_dir, "Prompt template directory");
  cmd->add_flag("--no-cache", f.no_cache,
                "Skip cache reads (fresh responses are still stored)");
  cmd->add_flag("--force", f.force, "Replace existing output files");
  cmd->add_option("--seed", f.seed, "Dev/test split seed");
  cmd->add_option("--parallelism", f.parallelism, "Concurrent pairs")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--dry-run", f.dry_run,
                "Render prompts and print call counts; no backend calls");
  cmd->add_flag("--skip-failures", f.skip_failures,
                "Log failing records to <out>.failures.jsonl and continue");
  cmd->add_flag("--empty-prediction-zero", f.empty_prediction_zero,
                "Score predictions with zero facts as 0 instead of failing");
  cmd->add_flag("--quiet", f.quiet, "No per-record progress on stderr");
  cmd->add_option("--metrics", f.metrics, "Metric subset, e.g. bifact,rouge1")
      ->delimiter(',');
}

bifact::RunConfig BuildConfig(const CommonFlags& f) {
  bifact::RunConfig config = f.config.empty()
                                 ? bifact::DefaultRunConfig()
                                 : bifact::LoadRunConfig(f.config);
  if (!f.cache_dir.empty()) {
    config.cache_dir = std::filesystem::absolute(f.cache_dir);
  }
  if (!f.templates_dir.empty()) {
    config.templates_dir = std::filesystem::absolute(f.templates_dir);
  }
  if (f.seed) config.seed = *f.seed;
  if (f.parallelism) config.parallelism = *f.parallelism;
  if (f.empty_prediction_zero) config.empty_prediction_zero = true;
  if (!f.metrics.empty()) {
    config.metrics.clear();
    for (const auto& name : f.metrics) {
      config.metrics.push_back(bifact::ParseMetric(name));
    }
  }
  bifact::ValidateRunConfig(config);
  return config;
}

bifact::RunOptions BuildOptions(const CommonFlags& f) {
  bifact::RunOptions options;
  options.force = f.force;
  options.no_cache = f.no_cache;
  options.dry_run = f.dry_run;
  options.skip_failures = f.skip_failures;
  options.progress = !f.quiet;
  return options;
}

int Finish(const std::string& command, const bifact::CommandSummary& s) {
  bifact::LogInfo(command + ": wrote " + std::to_string(s.records_written) +
                  " records, " + std::to_string(s.failures) + " failures, " +
                  std::to_string(s.backend_calls) + " backend calls, " +
                  std::to_string(s.cache_hits) + " cache hits");
  return s.failures > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bi-Fact intent evaluation"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string intents, gold_facts, predictions, results, labels, sweep, out;
  std::string table, fact_level, fact_results, fact_model;

  auto* factorize = app.add_subcommand("factorize", "Factorize gold intents");
  AddCommonFlags(factorize, flags);
  factorize->add_option("--intents", intents, "Gold intents JSONL")->required();
  factorize->add_option("--out", out, "Output gold_facts JSONL")->required();

  auto* evaluate = app.add_subcommand("evaluate", "Score predictions");
  AddCommonFlags(evaluate, flags);
  evaluate->add_option("--intents", intents, "Gold intents JSONL")->required();
  evaluate->add_option("--gold-facts", gold_facts, "Gold facts JSONL")->required();
  evaluate->add_option("--predictions", predictions, "Predictions JSONL")->required();
  evaluate->add_option("--out", out, "Output results JSONL")->required();

  auto* calibrate = app.add_subcommand("calibrate", "Tune thresholds on dev");
  AddCommonFlags(calibrate, flags);
  calibrate->add_option("--results", results, "Results JSONL")->required();
  calibrate->add_option("--labels", labels, "Intent match labels JSONL")->required();
  calibrate->add_option("--out", out, "Output sweep JSON")->required();

  auto* report = app.add_subcommand("report", "Agreement on the test split");
  AddCommonFlags(report, flags);
  report->add_option("--results", results, "Results JSONL")->required();
  report->add_option("--labels", labels, "Intent match labels JSONL")->required();
  report->add_option("--sweep", sweep, "Sweep JSON from calibrate")->required();
  report->add_option("--out", out, "Output report JSON")->required();
  report->add_option("--table", table, "Write the text table here, not stdout");
  report->add_option("--fact-level", fact_level, "Fact-level annotations JSONL");
  report->add_option("--fact-results", fact_results,
                     "Results for the fact-level pairs (default: --results)");
  report->add_option("--fact-model", fact_model,
                     "Model whose results pair with the fact-level records");

  auto* split = app.add_subcommand("split", "Write the dev/test split");
  AddCommonFlags(split, flags);
  split->add_option("--labels", labels, "Intent match labels JSONL")->required();
  split->add_option("--out", out, "Output split JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const bifact::RunConfig config = BuildConfig(flags);
    const bifact::RunOptions options = BuildOptions(flags);
    if (*factorize) {
      return Finish("factorize", bifact::RunFactorize(config, options, intents,
                                                      out, std::cout));
    }
    if (*evaluate) {
      return Finish("evaluate",
                    bifact::RunEvaluate(config, options, intents, gold_facts,
                                        predictions, out, std::cout));
    }
    if (*calibrate) {
      return Finish("calibrate",
                    bifact::RunCalibrate(config, options, results, labels, out));
    }
    if (*report) {
      bifact::ReportPaths paths;
      paths.results = results;
      paths.labels = labels;
      paths.sweep = sweep;
      paths.out = out;
      if (!table.empty()) paths.table = table;
      if (!fact_level.empty()) paths.fact_level = fact_level;
      if (!fact_results.empty()) paths.fact_results = fact_results;
      if (!fact_model.empty()) paths.fact_model = fact_model;
      bifact::RunReport(config, options, paths, std::cout);
      return 0;
    }
    if (*split) {
      return Finish("split", bifact::RunSplit(config, options, labels, out));
    }
  } catch (const bifact::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (!e.detail().empty()) std::cerr << "detail: " << e.detail() << "\n";
    return bifact::IsContractViolation(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
