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

// End-to-end commands behind the `bifact` CLI: factorize -> evaluate ->
// calibrate -> report, plus the dev/test split on its own.
//
// Each command reads its inputs fully, validates them before any backend
// call, and writes its output through temp-then-rename. Output lines are
// sorted canonically so bounded parallelism never changes the bytes.

#ifndef BIFACT_PIPELINE_H_
#define BIFACT_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bifact/baselines.h"
#include "bifact/core.h"
#include "bifact/judge.h"
#include "bifact/stats.h"

namespace bifact {

struct RunConfig {
  JudgeBackend judge;
  EmbeddingConfig embedding;
  LexicalOptions lexical;
  std::filesystem::path templates_dir;
  // Empty disables the response cache.
  std::filesystem::path cache_dir;
  int parallelism = 1;
  std::vector<MetricKind> metrics{std::begin(kAllMetrics), std::end(kAllMetrics)};
  double dev_fraction = 0.1;
  std::uint64_t seed = 0;
  bool empty_prediction_zero = false;
};

// Templates shipped with the source tree.
std::filesystem::path DefaultTemplatesDir();
RunConfig DefaultRunConfig();

// Parses a JSON config. Unknown keys are rejected; relative paths resolve
// against `base_dir` and are made absolute. Throws ConfigError.
RunConfig ParseRunConfig(std::string_view json_text,
                         const std::filesystem::path& base_dir);
RunConfig LoadRunConfig(const std::filesystem::path& path);
// Throws ConfigError.
void ValidateRunConfig(const RunConfig& config);

struct RunOptions {
  bool force = false;
  bool no_cache = false;
  bool dry_run = false;
  bool skip_failures = false;
  bool progress = true;
};

struct CommandSummary {
  long records_written = 0;
  long failures = 0;
  long backend_calls = 0;
  long cache_hits = 0;
};

// Factorizes every gold intent once. The output is a fixed artifact and is
// only replaced with `force`.
CommandSummary RunFactorize(const RunConfig& config, const RunOptions& options,
                            const std::filesystem::path& intents_path,
                            const std::filesystem::path& out_path,
                            std::ostream& out);

// One result line per (pair, metric). Bi-Fact lines carry the full coverage
// assessment in `details`.
CommandSummary RunEvaluate(const RunConfig& config, const RunOptions& options,
                           const std::filesystem::path& intents_path,
                           const std::filesystem::path& gold_facts_path,
                           const std::filesystem::path& predictions_path,
                           const std::filesystem::path& out_path,
                           std::ostream& out);

// Threshold sweep per metric on the dev half of the labels.
CommandSummary RunCalibrate(const RunConfig& config, const RunOptions& options,
                            const std::filesystem::path& results_path,
                            const std::filesystem::path& labels_path,
                            const std::filesystem::path& out_path);

struct ReportPaths {
  std::filesystem::path results;
  std::filesystem::path labels;
  std::filesystem::path sweep;
  std::filesystem::path out;
  std::optional<std::filesystem::path> table;
  std::optional<std::filesystem::path> fact_level;
  // Results for the fact-level pairs; defaults to `results`.
  std::optional<std::filesystem::path> fact_results;
  // Restricts the fact-level results to one model; required when an id was
  // scored for several models.
  std::optional<std::string> fact_model;
};

struct ReportOutput {
  std::vector<AgreementReport> agreement;
  std::vector<std::pair<MetricKind, CorrelationReport>> correlation;
  std::string table;
};

// Agreement on the test half, plus correlation with fact-level annotations
// when given. The text table is written to `paths.table` or to `out`.
ReportOutput RunReport(const RunConfig& config, const RunOptions& options,
                       const ReportPaths& paths, std::ostream& out);

// Writes {"seed", "dev_fraction", "dev": [...], "test": [...]}.
CommandSummary RunSplit(const RunConfig& config, const RunOptions& options,
                        const std::filesystem::path& labels_path,
                        const std::filesystem::path& out_path);

}  // namespace bifact

#endif  // BIFACT_PIPELINE_H_
