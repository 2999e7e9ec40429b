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

#include "bifact/pipeline.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <thread>

#include "bifact/calibration.h"
#include "bifact/datasets.h"
#include "bifact/error.h"
#include "bifact/io.h"
#include "bifact/text.h"

namespace bifact {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void CheckOutput(const std::filesystem::path& path, bool force) {
  if (!force && std::filesystem::exists(path)) {
    throw Error(ErrorCode::kRefusedOverwrite,
                path.string() + " exists; pass --force to replace it");
  }
}

// Re-raises `e` with a leading context such as the failing record id.
[[noreturn]] void RethrowWithContext(std::exception_ptr error,
                                     const std::string& context) {
  try {
    std::rethrow_exception(error);
  } catch (const Error& e) {
    std::string message = e.what();
    const std::string prefix = std::string(ErrorCodeName(e.code())) + ": ";
    if (message.starts_with(prefix)) message.erase(0, prefix.size());
    throw Error(e.code(), context + ": " + message, e.detail());
  }
}

struct Failure {
  std::size_t index = 0;
  std::exception_ptr error;
};

std::string DescribeError(std::exception_ptr error) {
  try {
    std::rethrow_exception(error);
  } catch (const std::exception& e) {
    return e.what();
  } catch (...) {
    return "unknown error";
  }
}

std::string ErrorCodeOf(std::exception_ptr error) {
  try {
    std::rethrow_exception(error);
  } catch (const Error& e) {
    return std::string(ErrorCodeName(e.code()));
  } catch (...) {
    return "Unknown";
  }
}

// Runs task(i) for every i in [0, n) on at most `parallelism` threads.
// Without `keep_going`, no new task starts after the first failure; every
// task with a smaller index has already been claimed by then, so the
// smallest failing index is the same for any thread count.
std::vector<Failure> RunBounded(std::size_t n, int parallelism,
                                bool keep_going,
                                const std::function<void(std::size_t)>& task) {
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex mu;
  std::vector<Failure> failures;
  auto worker = [&] {
    while (!stop.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        task(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        failures.push_back({i, std::current_exception()});
        if (!keep_going) stop.store(true);
      }
    }
  };
  const auto threads = static_cast<std::size_t>(
      std::clamp<std::size_t>(static_cast<std::size_t>(parallelism), 1,
                              std::max<std::size_t>(n, 1)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  std::sort(failures.begin(), failures.end(),
            [](const Failure& a, const Failure& b) { return a.index < b.index; });
  return failures;
}

class Progress {
 public:
  Progress(bool enabled, std::string stage, std::size_t total)
      : enabled_(enabled), stage_(std::move(stage)), total_(total) {}

  void Done(const std::string& what) {
    if (!enabled_) return;
    const std::size_t k = ++done_;
    LogInfo(stage_ + " [" + std::to_string(k) + "/" + std::to_string(total_) +
            "] " + what);
  }

 private:
  bool enabled_;
  std::string stage_;
  std::size_t total_;
  std::atomic<std::size_t> done_{0};
};

std::filesystem::path SidecarPath(const std::filesystem::path& out) {
  return out.string() + ".failures.jsonl";
}

Judge MakeJudge(const RunConfig& config, const RunOptions& options) {
  std::optional<ResponseCache> cache;
  if (!config.cache_dir.empty()) cache.emplace(config.cache_dir);
  CachePolicy policy;
  policy.enabled = cache.has_value();
  policy.bypass_reads = options.no_cache;
  return Judge(config.judge, MakeTransport(config.judge),
               TemplateSet::LoadFromDirectory(config.templates_dir),
               std::move(cache), policy);
}

void WriteJsonFile(const ordered_json& doc, const std::filesystem::path& path) {
  WriteFileAtomic(path, doc.dump(2) + "\n");
}

ordered_json JsonNumberOrNull(double v) {
  return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr);
}

std::vector<MetricKind> CanonicalMetrics(const std::vector<MetricKind>& metrics) {
  std::vector<MetricKind> out = metrics;
  std::sort(out.begin(), out.end());
  return out;
}

ordered_json LabelsJson(const std::vector<FactLabel>& labels) {
  ordered_json out = ordered_json::array();
  for (const auto& l : labels) {
    out.push_back({{"fact", l.fact}, {"implied", l.implied}});
  }
  return out;
}

ordered_json FractionJson(const Fraction& f) {
  return ordered_json::array({f.numerator(), f.denominator()});
}

ordered_json AssessmentDetails(const CoverageAssessment& a) {
  ordered_json d;
  d["recall"] = a.recall.ToDouble();
  d["precision"] = a.precision.ToDouble();
  d["f1"] = a.f1.ToDouble();
  d["recall_exact"] = FractionJson(a.recall);
  d["precision_exact"] = FractionJson(a.precision);
  d["f1_exact"] = FractionJson(a.f1);
  d["gold_fact_labels"] = LabelsJson(a.gold_fact_labels);
  d["predicted_facts"] = a.predicted_facts.facts();
  d["predicted_fact_labels"] = LabelsJson(a.predicted_fact_labels);
  return d;
}

std::vector<PairKey> LabelKeys(const std::vector<IntentMatchLabel>& labels) {
  std::vector<PairKey> keys;
  for (const auto& l : labels) keys.push_back(l.key());
  return keys;
}

ordered_json PairsJson(const std::vector<PairKey>& pairs) {
  ordered_json out = ordered_json::array();
  for (const auto& p : pairs) out.push_back({{"id", p.id}, {"model", p.model}});
  return out;
}

ordered_json MetricVariants(const LexicalOptions& lexical) {
  const char* rouge = lexical.rouge_aggregate == RougeAggregate::kF1 ? "f1"
                      : lexical.rouge_aggregate == RougeAggregate::kRecall
                          ? "recall"
                          : "precision";
  return {
      {"bleu", lexical.bleu_smoothing == BleuSmoothing::kNone
                   ? "sentence BLEU-4, uniform weights, no smoothing"
                   : "sentence BLEU-4, uniform weights, add-one smoothing "
                     "for orders >= 2"},
      {"rouge", rouge},
      {"meteor", "exact unigram matches, alpha 0.9, beta 3, gamma 0.5"},
  };
}

}  // namespace

CommandSummary RunFactorize(const RunConfig& config, const RunOptions& options,
                            const std::filesystem::path& intents_path,
                            const std::filesystem::path& out_path,
                            std::ostream& out) {
  ValidateRunConfig(config);
  if (!options.dry_run) CheckOutput(out_path, options.force);
  const auto intents = LoadJsonl<GoldIntentRecord>(intents_path);
  Judge judge = MakeJudge(config, options);

  CommandSummary summary;
  if (options.dry_run) {
    for (const auto& r : intents) judge.FactorizeRequest(r.ToIntent());
    out << "factorize: " << intents.size() << " prompts rendered; judge calls "
        << "factorize=" << intents.size() << " total=" << intents.size()
        << "; no backend calls made\n";
    return summary;
  }

  std::vector<std::optional<FactorizedIntent>> facts(intents.size());
  Progress progress(options.progress, "factorize", intents.size());
  const auto failures = RunBounded(
      intents.size(), config.parallelism, options.skip_failures,
      [&](std::size_t i) {
        facts[i] = judge.FactorizeGold(intents[i].ToIntent());
        progress.Done(intents[i].id);
      });
  if (!failures.empty() && !options.skip_failures) {
    RethrowWithContext(failures.front().error,
                       "gold intent '" + intents[failures.front().index].id + "'");
  }

  std::vector<FactorizedIntent> kept;
  for (auto& f : facts) {
    if (f) kept.push_back(std::move(*f));
  }
  std::sort(kept.begin(), kept.end(),
            [](const FactorizedIntent& a, const FactorizedIntent& b) {
              return a.intent_id() < b.intent_id();
            });
  SaveGoldFactorizations(kept, out_path, /*force=*/true);
  if (!failures.empty()) {
    std::string log;
    for (const auto& f : failures) {
      ordered_json line = {{"id", intents[f.index].id},
                           {"stage", "factorize"},
                           {"code", ErrorCodeOf(f.error)},
                           {"message", DescribeError(f.error)}};
      log += line.dump() + "\n";
    }
    WriteFileAtomic(SidecarPath(out_path), log);
  }
  summary.records_written = static_cast<long>(kept.size());
  summary.failures = static_cast<long>(failures.size());
  summary.backend_calls = judge.backend_calls();
  summary.cache_hits = judge.cache_hits();
  return summary;
}

CommandSummary RunEvaluate(const RunConfig& config, const RunOptions& options,
                           const std::filesystem::path& intents_path,
                           const std::filesystem::path& gold_facts_path,
                           const std::filesystem::path& predictions_path,
                           const std::filesystem::path& out_path,
                           std::ostream& out) {
  ValidateRunConfig(config);
  if (!options.dry_run) CheckOutput(out_path, options.force);
  const auto intents = LoadJsonl<GoldIntentRecord>(intents_path);
  const auto gold_list = LoadGoldFactorizations(gold_facts_path);
  auto predictions = LoadJsonl<PredictionRecord>(predictions_path);
  std::sort(predictions.begin(), predictions.end(),
            [](const PredictionRecord& a, const PredictionRecord& b) {
              return a.key() < b.key();
            });

  std::map<std::string, GoldIntentRecord> gold_text;
  for (const auto& r : intents) gold_text.emplace(r.id, r);
  std::map<std::string, FactorizedIntent> gold_facts;
  for (const auto& f : gold_list) gold_facts.emplace(f.intent_id(), f);
  for (const auto& p : predictions) {
    if (!gold_text.contains(p.id)) {
      throw Error(ErrorCode::kMissingGoldFacts,
                  "prediction " + p.key().ToString() + " has no gold intent");
    }
  }
  const auto metrics = CanonicalMetrics(config.metrics);
  const bool needs_facts =
      std::find(metrics.begin(), metrics.end(), MetricKind::kBifact) !=
      metrics.end();
  if (needs_facts) CheckGoldFactsCoverage(predictions, gold_facts);

  Judge judge = MakeJudge(config, options);
  const bool needs_embedding =
      std::find(metrics.begin(), metrics.end(), MetricKind::kEmbedSim) !=
      metrics.end();

  CommandSummary summary;
  if (options.dry_run) {
    long assess = 0, nli = 0, autorater = 0, embed = 0;
    for (const auto& p : predictions) {
      const Intent gold = gold_text.at(p.id).ToIntent();
      const Intent predicted = p.ToIntent();
      for (MetricKind m : metrics) {
        switch (m) {
          case MetricKind::kBifact:
            judge.AssessRequest(gold, gold_facts.at(p.id), predicted);
            ++assess;
            break;
          case MetricKind::kNli:
            judge.NliRequest(gold.text, predicted.text);
            judge.NliRequest(predicted.text, gold.text);
            nli += 2;
            break;
          case MetricKind::kAutorater:
            judge.AutoraterRequest(gold, predicted);
            ++autorater;
            break;
          case MetricKind::kEmbedSim:
            embed += 2;
            break;
          default:
            break;
        }
      }
    }
    out << "evaluate: " << predictions.size() << " pairs x " << metrics.size()
        << " metrics; " << (assess + nli + autorater)
        << " prompts rendered; judge calls assess=" << assess
        << " nli=" << nli << " autorater=" << autorater
        << " total=" << (assess + nli + autorater)
        << "; embedding requests=" << embed << "; no backend calls made\n";
    return summary;
  }

  std::unique_ptr<EmbeddingBackend> embedding;
  if (needs_embedding) embedding = MakeEmbeddingBackend(config.embedding);

  const std::size_t n = predictions.size() * metrics.size();
  std::vector<std::optional<MetricResult>> results(n);
  Progress progress(options.progress, "evaluate", n);
  auto task = [&](std::size_t index) {
    const PredictionRecord& p = predictions[index / metrics.size()];
    const MetricKind metric = metrics[index % metrics.size()];
    const GoldIntentRecord& g = gold_text.at(p.id);
    MetricResult r;
    r.id = p.id;
    r.model = p.model;
    r.metric = metric;
    switch (metric) {
      case MetricKind::kBifact: {
        const FactorizedIntent& facts = gold_facts.at(p.id);
        const AssessmentResponse response =
            judge.AssessPair(g.ToIntent(), facts, p.ToIntent());
        const CoverageAssessment assessment = AssembleAssessment(
            p.key().ToString(), facts,
            FactorizedIntent(p.key().ToString(), response.predicted_facts),
            response.gold_fact_labels, response.predicted_fact_labels,
            response.raw, config.empty_prediction_zero);
        r.score = assessment.f1.ToDouble();
        r.details = AssessmentDetails(assessment);
        break;
      }
      case MetricKind::kBleu:
        r.score = Bleu(Tokenize(g.gold_intent), Tokenize(p.predicted_intent),
                       config.lexical.bleu_smoothing);
        break;
      case MetricKind::kRouge1:
      case MetricKind::kRouge2:
        r.score = RougeN(Tokenize(g.gold_intent), Tokenize(p.predicted_intent),
                         metric == MetricKind::kRouge1 ? 1 : 2,
                         config.lexical.rouge_aggregate);
        break;
      case MetricKind::kRougeL:
        r.score = RougeL(Tokenize(g.gold_intent), Tokenize(p.predicted_intent),
                         config.lexical.rouge_aggregate);
        break;
      case MetricKind::kMeteor:
        r.score = Meteor(Tokenize(g.gold_intent), Tokenize(p.predicted_intent));
        break;
      case MetricKind::kNli:
        r.score = BidirectionalNli(judge, g.gold_intent, p.predicted_intent);
        break;
      case MetricKind::kEmbedSim:
        r.score = EmbedSimilarity(*embedding, g.gold_intent, p.predicted_intent);
        break;
      case MetricKind::kAutorater: {
        const bool match = judge.AutoraterMatch(g.ToIntent(), p.ToIntent());
        r.score = match ? 1.0 : 0.0;
        r.binary = match;
        break;
      }
    }
    results[index] = std::move(r);
    progress.Done(p.key().ToString() + " " + std::string(MetricName(metric)));
  };
  const auto failures =
      RunBounded(n, config.parallelism, options.skip_failures, task);
  auto label_of = [&](std::size_t index) {
    const PredictionRecord& p = predictions[index / metrics.size()];
    return "pair " + p.key().ToString() + " metric " +
           std::string(MetricName(metrics[index % metrics.size()]));
  };
  if (!failures.empty() && !options.skip_failures) {
    RethrowWithContext(failures.front().error, label_of(failures.front().index));
  }

  // Index order is already (id, model, metric) because both the predictions
  // and the metric list are sorted.
  std::vector<MetricResult> kept;
  for (auto& r : results) {
    if (r) kept.push_back(std::move(*r));
  }
  SaveJsonl(kept, out_path, /*force=*/true);
  if (!failures.empty()) {
    std::string log;
    for (const auto& f : failures) {
      const PredictionRecord& p = predictions[f.index / metrics.size()];
      ordered_json line = {
          {"id", p.id},
          {"model", p.model},
          {"metric", MetricName(metrics[f.index % metrics.size()])},
          {"code", ErrorCodeOf(f.error)},
          {"message", DescribeError(f.error)}};
      log += line.dump() + "\n";
    }
    WriteFileAtomic(SidecarPath(out_path), log);
  }
  summary.records_written = static_cast<long>(kept.size());
  summary.failures = static_cast<long>(failures.size());
  summary.backend_calls = judge.backend_calls();
  summary.cache_hits = judge.cache_hits();
  return summary;
}

CommandSummary RunCalibrate(const RunConfig& config, const RunOptions& options,
                            const std::filesystem::path& results_path,
                            const std::filesystem::path& labels_path,
                            const std::filesystem::path& out_path) {
  ValidateRunConfig(config);
  if (!options.dry_run) CheckOutput(out_path, options.force);
  const auto results = LoadJsonl<MetricResult>(results_path);
  const auto labels = LoadJsonl<IntentMatchLabel>(labels_path);
  const auto keys = LabelKeys(labels);
  const DevTestSplit split =
      SplitDevTest(keys, config.dev_fraction, config.seed);
  const DevSplit& dev = split.dev;
  const std::set<PairKey> dev_set(dev.pairs.begin(), dev.pairs.end());
  const std::set<PairKey> labeled(keys.begin(), keys.end());

  std::vector<BinaryJudgment> dev_labels;
  for (const auto& l : labels) {
    if (dev_set.contains(l.key())) dev_labels.emplace_back(l.key(), l.human_match);
  }

  ordered_json sweeps = ordered_json::array();
  for (MetricKind metric : CanonicalMetrics(config.metrics)) {
    std::vector<ScoredPair> scores;
    bool present = false;
    for (const auto& r : results) {
      if (r.metric != metric) continue;
      present = true;
      if (!labeled.contains(r.key())) {
        throw Error(ErrorCode::kMissingLabel,
                    "no human label for " + r.key().ToString() + " (" +
                        std::string(MetricName(metric)) + ")");
      }
      if (dev_set.contains(r.key())) scores.emplace_back(r.key(), r.score);
    }
    if (!present) {
      LogWarning("calibrate: no results for metric '" +
                 std::string(MetricName(metric)) + "'; omitted");
      continue;
    }
    if (scores.size() != dev_set.size()) {
      throw Error(ErrorCode::kValidationError,
                  "results for '" + std::string(MetricName(metric)) +
                      "' cover " + std::to_string(scores.size()) + " of " +
                      std::to_string(dev_set.size()) + " dev pairs");
    }
    ordered_json entry;
    entry["metric"] = MetricName(metric);
    if (IsNativelyBinary(metric)) {
      entry["thresholds"] = ordered_json::array();
      entry["f1_at_threshold"] = ordered_json::array();
      entry["best_threshold"] = 0.5;
      entry["best_f1"] = nullptr;
      entry["binary_passthrough"] = true;
    } else {
      const ThresholdSweepResult sweep = Sweep(scores, dev_labels, metric);
      entry["thresholds"] = sweep.thresholds;
      entry["f1_at_threshold"] = sweep.f1_at_threshold;
      entry["best_threshold"] = sweep.best_threshold;
      entry["best_f1"] = sweep.best_f1;
    }
    sweeps.push_back(std::move(entry));
  }

  ordered_json doc;
  doc["seed"] = config.seed;
  doc["dev_fraction"] = config.dev_fraction;
  doc["dev_pairs"] = dev.pairs.size();
  doc["sweeps"] = std::move(sweeps);
  CommandSummary summary;
  summary.records_written = static_cast<long>(doc["sweeps"].size());
  if (!options.dry_run) WriteJsonFile(doc, out_path);
  return summary;
}

ReportOutput RunReport(const RunConfig& config, const RunOptions& options,
                       const ReportPaths& paths, std::ostream& out) {
  ValidateRunConfig(config);
  if (!options.dry_run) {
    CheckOutput(paths.out, options.force);
    if (paths.table) CheckOutput(*paths.table, options.force);
  }
  const auto results = LoadJsonl<MetricResult>(paths.results);
  const auto labels = LoadJsonl<IntentMatchLabel>(paths.labels);

  json sweep_doc;
  try {
    sweep_doc = json::parse(ReadFile(paths.sweep));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInputParseError,
                paths.sweep.string() + ": " + e.what());
  }
  std::map<MetricKind, double> thresholds;
  std::uint64_t seed = config.seed;
  double dev_fraction = config.dev_fraction;
  try {
    seed = sweep_doc.at("seed").get<std::uint64_t>();
    dev_fraction = sweep_doc.at("dev_fraction").get<double>();
    for (const auto& s : sweep_doc.at("sweeps")) {
      thresholds[ParseMetric(s.at("metric").get<std::string>())] =
          s.at("best_threshold").get<double>();
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kValidationError,
                paths.sweep.string() + ": malformed sweep file: " + e.what());
  }

  // The split is re-derived from the seed the thresholds were tuned with,
  // and only its test half is scored.
  const DevTestSplit split = SplitDevTest(LabelKeys(labels), dev_fraction, seed);
  const TestSplit& test = split.test;
  std::map<PairKey, bool> human;
  for (const auto& l : labels) human.emplace(l.key(), l.human_match);

  std::map<MetricKind, std::map<PairKey, const MetricResult*>> by_metric;
  for (const auto& r : results) by_metric[r.metric][r.key()] = &r;

  ReportOutput report;
  for (MetricKind metric : CanonicalMetrics(config.metrics)) {
    auto found = by_metric.find(metric);
    if (found == by_metric.end()) {
      LogWarning("report: no results for metric '" +
                 std::string(MetricName(metric)) + "'; omitted");
      continue;
    }
    const bool binary = IsNativelyBinary(metric);
    double threshold = 0.5;
    if (!binary) {
      auto t = thresholds.find(metric);
      if (t == thresholds.end()) {
        throw Error(ErrorCode::kMissingThreshold,
                    "no calibrated threshold for '" +
                        std::string(MetricName(metric)) + "'");
      }
      threshold = t->second;
    }
    std::vector<BinaryJudgment> predicted;
    std::vector<BinaryJudgment> truth;
    long missing = 0;
    for (const PairKey& key : test.pairs) {
      auto r = found->second.find(key);
      if (r == found->second.end()) {
        ++missing;
        continue;
      }
      const bool judged = binary && r->second->binary
                              ? *r->second->binary
                              : Binarize(r->second->score, threshold);
      predicted.emplace_back(key, judged);
      truth.emplace_back(key, human.at(key));
    }
    if (missing > 0) {
      LogWarning("report: " + std::to_string(missing) + " test pairs lack '" +
                 std::string(MetricName(metric)) + "' results");
    }
    if (predicted.empty()) {
      throw Error(ErrorCode::kEmptyInput,
                  "no test-split results for '" +
                      std::string(MetricName(metric)) + "'");
    }
    report.agreement.push_back(
        MakeAgreementReport(Confusion(predicted, truth), metric, threshold));
  }

  if (paths.fact_level) {
    const auto records = LoadJsonl<FactLevelRecord>(*paths.fact_level);
    const auto fact_results =
        paths.fact_results ? LoadJsonl<MetricResult>(*paths.fact_results)
                           : results;
    std::map<MetricKind, std::map<std::string, std::vector<double>>> scores;
    for (const auto& r : fact_results) {
      if (paths.fact_model && r.model != *paths.fact_model) continue;
      scores[r.metric][r.id].push_back(r.score);
    }
    for (MetricKind metric : CanonicalMetrics(config.metrics)) {
      auto found = scores.find(metric);
      if (found == scores.end()) continue;
      std::vector<double> automatic;
      std::vector<double> manual;
      for (const auto& rec : records) {
        auto s = found->second.find(rec.id);
        if (s == found->second.end()) {
          LogWarning("report: fact-level id '" + rec.id + "' has no '" +
                     std::string(MetricName(metric)) + "' result; skipped");
          continue;
        }
        if (s->second.size() > 1) {
          throw Error(ErrorCode::kValidationError,
                      "fact-level id '" + rec.id + "' has '" +
                          std::string(MetricName(metric)) +
                          "' results for several models; pass a fact model");
        }
        automatic.push_back(s->second.front());
        manual.push_back(ComputeHumanFactScores(rec).f1.ToDouble());
      }
      try {
        report.correlation.emplace_back(metric, Pearson(automatic, manual));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kEmptyInput &&
            e.code() != ErrorCode::kConstantSeries) {
          throw;
        }
        LogWarning("report: no correlation for '" +
                   std::string(MetricName(metric)) + "': " + e.what());
      }
    }
  }

  report.table = FormatAgreementTable(report.agreement);
  if (!report.correlation.empty()) {
    report.table += "\nPearson correlation with human fact-level F1\n";
    for (const auto& [metric, c] : report.correlation) {
      char line[160];
      std::snprintf(line, sizeof line, "%-10s r=%.3f p=%.3g n=%lld\n",
                    MetricDisplayName(metric).c_str(), c.r, c.p_value,
                    static_cast<long long>(c.n));
      report.table += line;
    }
  }

  ordered_json doc;
  doc["split"] = {{"seed", seed},
                  {"dev_fraction", dev_fraction},
                  {"test_pairs", test.pairs.size()}};
  doc["metric_variants"] = MetricVariants(config.lexical);
  ordered_json agreement = ordered_json::array();
  for (const auto& a : report.agreement) {
    agreement.push_back({{"metric", MetricName(a.metric)},
                         {"display_name", MetricDisplayName(a.metric)},
                         {"precision", a.precision},
                         {"recall", a.recall},
                         {"f1", a.f1},
                         {"kappa", a.kappa ? ordered_json(*a.kappa)
                                           : ordered_json(nullptr)},
                         {"threshold", a.threshold_used},
                         {"n", a.n}});
  }
  doc["agreement"] = std::move(agreement);
  ordered_json correlation = ordered_json::array();
  for (const auto& [metric, c] : report.correlation) {
    correlation.push_back({{"metric", MetricName(metric)},
                           {"r", c.r},
                           {"t", JsonNumberOrNull(c.t)},
                           {"p_value", c.p_value},
                           {"n", c.n}});
  }
  doc["correlation"] = std::move(correlation);

  if (!options.dry_run) {
    WriteJsonFile(doc, paths.out);
    if (paths.table) WriteFileAtomic(*paths.table, report.table);
  }
  if (!paths.table || options.dry_run) out << report.table;
  return report;
}

CommandSummary RunSplit(const RunConfig& config, const RunOptions& options,
                        const std::filesystem::path& labels_path,
                        const std::filesystem::path& out_path) {
  ValidateRunConfig(config);
  if (!options.dry_run) CheckOutput(out_path, options.force);
  const auto labels = LoadJsonl<IntentMatchLabel>(labels_path);
  const DevTestSplit split =
      SplitDevTest(LabelKeys(labels), config.dev_fraction, config.seed);
  ordered_json doc;
  doc["seed"] = config.seed;
  doc["dev_fraction"] = config.dev_fraction;
  doc["dev"] = PairsJson(split.dev.pairs);
  doc["test"] = PairsJson(split.test.pairs);
  if (!options.dry_run) WriteJsonFile(doc, out_path);
  CommandSummary summary;
  summary.records_written =
      static_cast<long>(split.dev.pairs.size() + split.test.pairs.size());
  return summary;
}

}  // namespace bifact
