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

// JSONL record types and their validation. One JSON object per line; blank
// lines are skipped; unknown fields are ignored. Errors carry the 1-based
// line number. Writes are atomic (temp file, then rename).

#ifndef BIFACT_DATASETS_H_
#define BIFACT_DATASETS_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bifact/core.h"
#include "bifact/pair_key.h"
#include "json.hpp"

namespace bifact {

// intents: {"id", "gold_intent", "source"?}
struct GoldIntentRecord {
  std::string id;
  std::string gold_intent;
  std::optional<std::string> source;

  Intent ToIntent() const;
  friend bool operator==(const GoldIntentRecord&,
                         const GoldIntentRecord&) = default;
};

// predictions: {"id", "model", "predicted_intent"}
struct PredictionRecord {
  std::string id;
  std::string model;
  std::string predicted_intent;

  PairKey key() const { return {id, model}; }
  Intent ToIntent() const;
  friend bool operator==(const PredictionRecord&,
                         const PredictionRecord&) = default;
};

// intent_match_labels: {"id", "model", "human_match"}
struct IntentMatchLabel {
  std::string id;
  std::string model;
  bool human_match = false;

  PairKey key() const { return {id, model}; }
  friend bool operator==(const IntentMatchLabel&,
                         const IntentMatchLabel&) = default;
};

// A gold/predicted pair joined with its human match judgment.
struct IntentMatchRecord {
  std::string id;
  std::string gold_intent;
  std::string predicted_intent;
  std::string model;
  bool human_match = false;
  std::optional<std::string> source;
};

// fact_level: {"id", "gold_facts", "predicted_facts", "human_gold_labels",
//              "human_predicted_labels"}
struct FactLevelRecord {
  std::string id;
  std::vector<std::string> gold_facts;
  std::vector<std::string> predicted_facts;
  std::vector<bool> human_gold_labels;
  std::vector<bool> human_predicted_labels;

  friend bool operator==(const FactLevelRecord&,
                         const FactLevelRecord&) = default;
};

// results: {"id", "model", "metric", "score", "binary"?, "threshold"?,
//           "details"?}
struct MetricResult {
  std::string id;
  std::string model;
  MetricKind metric = MetricKind::kBifact;
  double score = 0.0;
  std::optional<bool> binary;
  std::optional<double> threshold;
  std::optional<nlohmann::ordered_json> details;

  PairKey key() const { return {id, model}; }
  friend bool operator==(const MetricResult&, const MetricResult&) = default;
};

// Per-record JSON conversion. FromJson throws ValidationError naming the
// field; line numbers are added by the loader.
template <typename Record>
Record RecordFromJson(const nlohmann::json& j);
template <typename Record>
nlohmann::ordered_json RecordToJson(const Record& r);

#define BIFACT_DECLARE_RECORD(Record)                                  \
  template <>                                                          \
  Record RecordFromJson<Record>(const nlohmann::json& j);              \
  template <>                                                          \
  nlohmann::ordered_json RecordToJson<Record>(const Record& r);

BIFACT_DECLARE_RECORD(GoldIntentRecord)
BIFACT_DECLARE_RECORD(PredictionRecord)
BIFACT_DECLARE_RECORD(IntentMatchLabel)
BIFACT_DECLARE_RECORD(FactorizedIntent)
BIFACT_DECLARE_RECORD(FactLevelRecord)
BIFACT_DECLARE_RECORD(MetricResult)

#undef BIFACT_DECLARE_RECORD

// Parses JSONL text. Throws ParseError (bad JSON), ValidationError or
// DuplicateKey, each naming the line.
template <typename Record>
std::vector<Record> ParseJsonl(std::string_view text,
                               std::string_view source_name = "<input>");

template <typename Record>
std::vector<Record> LoadJsonl(const std::filesystem::path& path);

template <typename Record>
std::string SerializeJsonl(const std::vector<Record>& records);

// Refuses to replace an existing file unless `force`. Throws RefusedOverwrite.
template <typename Record>
void SaveJsonl(const std::vector<Record>& records,
               const std::filesystem::path& path, bool force);

// gold_facts: {"id", "facts"}. Gold factorizations are fixed artifacts:
// saving over an existing file requires `force`.
void SaveGoldFactorizations(const std::vector<FactorizedIntent>& facts,
                            const std::filesystem::path& path, bool force);
std::vector<FactorizedIntent> LoadGoldFactorizations(
    const std::filesystem::path& path);

// Throws MissingGoldFacts naming the first prediction id without gold facts.
void CheckGoldFactsCoverage(
    const std::vector<PredictionRecord>& predictions,
    const std::map<std::string, FactorizedIntent>& gold_facts);

// Joins intents, predictions and labels on (id, model). Throws
// MissingLabel / MissingGoldFacts when a side is absent.
std::vector<IntentMatchRecord> JoinIntentMatch(
    const std::vector<GoldIntentRecord>& intents,
    const std::vector<PredictionRecord>& predictions,
    const std::vector<IntentMatchLabel>& labels);

struct HumanFactScores {
  Fraction precision;
  Fraction recall;
  Fraction f1;
};

// Aggregates the per-fact human labels with the same arithmetic as the
// automatic path.
HumanFactScores ComputeHumanFactScores(const FactLevelRecord& record);

}  // namespace bifact

#endif  // BIFACT_DATASETS_H_
