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

#include "bifact/datasets.h"

#include <cmath>
#include <set>

#include "bifact/error.h"
#include "bifact/io.h"

namespace bifact {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void Invalid(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::kValidationError, "field '" + field + "': " + why);
}

const json& Require(const json& j, const char* field) {
  if (!j.contains(field)) Invalid(field, "missing");
  return j[field];
}

std::string RequireText(const json& j, const char* field) {
  const json& v = Require(j, field);
  if (!v.is_string()) Invalid(field, "must be a string");
  std::string s = v.get<std::string>();
  if (NormalizeWhitespace(s).empty()) Invalid(field, "must be non-empty");
  return s;
}

std::optional<std::string> OptionalText(const json& j, const char* field) {
  if (!j.contains(field) || j[field].is_null()) return std::nullopt;
  if (!j[field].is_string()) Invalid(field, "must be a string");
  return j[field].get<std::string>();
}

bool RequireBool(const json& j, const char* field) {
  const json& v = Require(j, field);
  if (!v.is_boolean()) Invalid(field, "must be a boolean");
  return v.get<bool>();
}

std::vector<std::string> RequireTextList(const json& j, const char* field) {
  const json& v = Require(j, field);
  if (!v.is_array() || v.empty()) Invalid(field, "must be a non-empty array");
  std::vector<std::string> out;
  for (const auto& item : v) {
    if (!item.is_string() || NormalizeWhitespace(item.get<std::string>()).empty()) {
      Invalid(field, "entries must be non-empty strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::vector<bool> RequireBoolList(const json& j, const char* field) {
  const json& v = Require(j, field);
  if (!v.is_array() || v.empty()) Invalid(field, "must be a non-empty array");
  std::vector<bool> out;
  for (const auto& item : v) {
    if (!item.is_boolean()) Invalid(field, "entries must be booleans");
    out.push_back(item.get<bool>());
  }
  return out;
}

std::string DuplicateKey(const GoldIntentRecord& r) { return r.id; }
std::string DuplicateKey(const PredictionRecord& r) {
  return PairKey{r.id, r.model}.ToString();
}
std::string DuplicateKey(const IntentMatchLabel& r) {
  return PairKey{r.id, r.model}.ToString();
}
std::string DuplicateKey(const FactLevelRecord& r) { return r.id; }
std::string DuplicateKey(const FactorizedIntent& r) { return r.intent_id(); }
std::string DuplicateKey(const MetricResult& r) {
  return PairKey{r.id, r.model}.ToString() + "/" +
         std::string(MetricName(r.metric));
}

std::string LineError(std::string_view source, std::size_t line,
                      const std::string& what) {
  return std::string(source) + ":" + std::to_string(line) + ": " + what;
}

}  // namespace

Intent GoldIntentRecord::ToIntent() const {
  return Intent{id, gold_intent, IntentKind::kGold, std::nullopt, source};
}

Intent PredictionRecord::ToIntent() const {
  return Intent{id, predicted_intent, IntentKind::kPredicted, model,
                std::nullopt};
}

template <>
GoldIntentRecord RecordFromJson<GoldIntentRecord>(const json& j) {
  return {RequireText(j, "id"), RequireText(j, "gold_intent"),
          OptionalText(j, "source")};
}

template <>
ordered_json RecordToJson(const GoldIntentRecord& r) {
  ordered_json j;
  j["id"] = r.id;
  j["gold_intent"] = r.gold_intent;
  if (r.source) j["source"] = *r.source;
  return j;
}

template <>
PredictionRecord RecordFromJson<PredictionRecord>(const json& j) {
  return {RequireText(j, "id"), RequireText(j, "model"),
          RequireText(j, "predicted_intent")};
}

template <>
ordered_json RecordToJson(const PredictionRecord& r) {
  ordered_json j;
  j["id"] = r.id;
  j["model"] = r.model;
  j["predicted_intent"] = r.predicted_intent;
  return j;
}

template <>
IntentMatchLabel RecordFromJson<IntentMatchLabel>(const json& j) {
  return {RequireText(j, "id"), RequireText(j, "model"),
          RequireBool(j, "human_match")};
}

template <>
ordered_json RecordToJson(const IntentMatchLabel& r) {
  ordered_json j;
  j["id"] = r.id;
  j["model"] = r.model;
  j["human_match"] = r.human_match;
  return j;
}

template <>
FactorizedIntent RecordFromJson<FactorizedIntent>(const json& j) {
  std::string id = RequireText(j, "id");
  auto facts = RequireTextList(j, "facts");
  try {
    return FactorizedIntent(std::move(id), std::move(facts));
  } catch (const Error& e) {
    Invalid("facts", e.what());
  }
}

template <>
ordered_json RecordToJson(const FactorizedIntent& r) {
  ordered_json j;
  j["id"] = r.intent_id();
  j["facts"] = r.facts();
  return j;
}

template <>
FactLevelRecord RecordFromJson<FactLevelRecord>(const json& j) {
  FactLevelRecord r;
  r.id = RequireText(j, "id");
  r.gold_facts = RequireTextList(j, "gold_facts");
  r.predicted_facts = RequireTextList(j, "predicted_facts");
  r.human_gold_labels = RequireBoolList(j, "human_gold_labels");
  r.human_predicted_labels = RequireBoolList(j, "human_predicted_labels");
  if (r.human_gold_labels.size() != r.gold_facts.size()) {
    Invalid("human_gold_labels", "length differs from gold_facts");
  }
  if (r.human_predicted_labels.size() != r.predicted_facts.size()) {
    Invalid("human_predicted_labels", "length differs from predicted_facts");
  }
  return r;
}

template <>
ordered_json RecordToJson(const FactLevelRecord& r) {
  ordered_json j;
  j["id"] = r.id;
  j["gold_facts"] = r.gold_facts;
  j["predicted_facts"] = r.predicted_facts;
  j["human_gold_labels"] = r.human_gold_labels;
  j["human_predicted_labels"] = r.human_predicted_labels;
  return j;
}

template <>
MetricResult RecordFromJson<MetricResult>(const json& j) {
  MetricResult r;
  r.id = RequireText(j, "id");
  r.model = RequireText(j, "model");
  try {
    r.metric = ParseMetric(RequireText(j, "metric"));
  } catch (const Error& e) {
    Invalid("metric", e.what());
  }
  const json& score = Require(j, "score");
  if (!score.is_number()) Invalid("score", "must be a number");
  r.score = score.get<double>();
  if (!std::isfinite(r.score) || r.score < 0.0 || r.score > 1.0) {
    Invalid("score", "must be within [0,1]");
  }
  if (j.contains("binary") && !j["binary"].is_null()) {
    if (!j["binary"].is_boolean()) Invalid("binary", "must be a boolean");
    r.binary = j["binary"].get<bool>();
  }
  if (j.contains("threshold") && !j["threshold"].is_null()) {
    if (!j["threshold"].is_number()) Invalid("threshold", "must be a number");
    const double t = j["threshold"].get<double>();
    if (!(t > 0.0 && t <= 1.0)) Invalid("threshold", "must be within (0,1]");
    r.threshold = t;
  }
  if (r.binary && r.threshold && r.metric != MetricKind::kAutorater &&
      *r.binary != (r.score >= *r.threshold)) {
    Invalid("binary", "disagrees with score >= threshold");
  }
  if (j.contains("details") && !j["details"].is_null()) {
    if (!j["details"].is_object()) Invalid("details", "must be an object");
    r.details = ordered_json::parse(j["details"].dump());
  }
  return r;
}

template <>
ordered_json RecordToJson(const MetricResult& r) {
  ordered_json j;
  j["id"] = r.id;
  j["model"] = r.model;
  j["metric"] = std::string(MetricName(r.metric));
  j["score"] = r.score;
  if (r.binary) j["binary"] = *r.binary;
  if (r.threshold) j["threshold"] = *r.threshold;
  if (r.details) j["details"] = *r.details;
  return j;
}

template <typename Record>
std::vector<Record> ParseJsonl(std::string_view text,
                               std::string_view source_name) {
  std::vector<Record> records;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kInputParseError,
                  LineError(source_name, line_no, e.what()));
    }
    if (!j.is_object()) {
      throw Error(ErrorCode::kInputParseError,
                  LineError(source_name, line_no, "not a JSON object"));
    }
    Record record;
    try {
      record = RecordFromJson<Record>(j);
    } catch (const Error& e) {
      throw Error(e.code(), LineError(source_name, line_no, e.what()));
    }
    const std::string key = DuplicateKey(record);
    if (!seen.insert(key).second) {
      throw Error(ErrorCode::kDuplicateKey,
                  LineError(source_name, line_no, "duplicate key " + key));
    }
    records.push_back(std::move(record));
  }
  return records;
}

template <typename Record>
std::vector<Record> LoadJsonl(const std::filesystem::path& path) {
  return ParseJsonl<Record>(ReadFile(path), path.string());
}

template <typename Record>
std::string SerializeJsonl(const std::vector<Record>& records) {
  std::string out;
  for (const auto& r : records) {
    out += RecordToJson(r).dump();
    out += '\n';
  }
  return out;
}

template <typename Record>
void SaveJsonl(const std::vector<Record>& records,
               const std::filesystem::path& path, bool force) {
  if (!force && std::filesystem::exists(path)) {
    throw Error(ErrorCode::kRefusedOverwrite,
                path.string() + " exists; pass --force to replace it");
  }
  WriteFileAtomic(path, SerializeJsonl(records));
}

#define BIFACT_INSTANTIATE_JSONL(Record)                                   \
  template std::vector<Record> ParseJsonl<Record>(std::string_view,         \
                                                  std::string_view);        \
  template std::vector<Record> LoadJsonl<Record>(                           \
      const std::filesystem::path&);                                        \
  template std::string SerializeJsonl<Record>(const std::vector<Record>&);  \
  template void SaveJsonl<Record>(const std::vector<Record>&,               \
                                  const std::filesystem::path&, bool);

BIFACT_INSTANTIATE_JSONL(GoldIntentRecord)
BIFACT_INSTANTIATE_JSONL(PredictionRecord)
BIFACT_INSTANTIATE_JSONL(IntentMatchLabel)
BIFACT_INSTANTIATE_JSONL(FactorizedIntent)
BIFACT_INSTANTIATE_JSONL(FactLevelRecord)
BIFACT_INSTANTIATE_JSONL(MetricResult)

#undef BIFACT_INSTANTIATE_JSONL

void SaveGoldFactorizations(const std::vector<FactorizedIntent>& facts,
                            const std::filesystem::path& path, bool force) {
  std::set<std::string> ids;
  for (const auto& f : facts) {
    if (!ids.insert(f.intent_id()).second) {
      throw Error(ErrorCode::kDuplicateKey,
                  "gold factorization for '" + f.intent_id() + "' given twice");
    }
    if (f.empty()) {
      throw Error(ErrorCode::kEmptyFactorization,
                  "gold factorization for '" + f.intent_id() + "' is empty");
    }
  }
  SaveJsonl(facts, path, force);
}

std::vector<FactorizedIntent> LoadGoldFactorizations(
    const std::filesystem::path& path) {
  return LoadJsonl<FactorizedIntent>(path);
}

void CheckGoldFactsCoverage(
    const std::vector<PredictionRecord>& predictions,
    const std::map<std::string, FactorizedIntent>& gold_facts) {
  for (const auto& p : predictions) {
    if (!gold_facts.contains(p.id)) {
      throw Error(ErrorCode::kMissingGoldFacts,
                  "no gold factorization for id '" + p.id + "'");
    }
  }
}

std::vector<IntentMatchRecord> JoinIntentMatch(
    const std::vector<GoldIntentRecord>& intents,
    const std::vector<PredictionRecord>& predictions,
    const std::vector<IntentMatchLabel>& labels) {
  std::map<std::string, const GoldIntentRecord*> gold;
  for (const auto& g : intents) gold[g.id] = &g;
  std::map<PairKey, bool> label_of;
  for (const auto& l : labels) label_of[l.key()] = l.human_match;

  std::vector<IntentMatchRecord> out;
  for (const auto& p : predictions) {
    auto g = gold.find(p.id);
    if (g == gold.end()) {
      throw Error(ErrorCode::kMissingGoldFacts,
                  "no gold intent for id '" + p.id + "'");
    }
    auto l = label_of.find(p.key());
    if (l == label_of.end()) {
      throw Error(ErrorCode::kMissingLabel,
                  "no human label for " + p.key().ToString());
    }
    out.push_back({p.id, g->second->gold_intent, p.predicted_intent, p.model,
                   l->second, g->second->source});
  }
  return out;
}

HumanFactScores ComputeHumanFactScores(const FactLevelRecord& record) {
  std::vector<FactLabel> gold, predicted;
  for (std::size_t i = 0; i < record.gold_facts.size(); ++i) {
    gold.push_back({record.gold_facts[i], record.human_gold_labels.at(i)});
  }
  for (std::size_t i = 0; i < record.predicted_facts.size(); ++i) {
    predicted.push_back(
        {record.predicted_facts[i], record.human_predicted_labels.at(i)});
  }
  HumanFactScores s;
  s.recall = ComputeRecall(gold);
  s.precision = ComputePrecision(predicted);
  s.f1 = ComputeF1(s.precision, s.recall);
  return s;
}

}  // namespace bifact
