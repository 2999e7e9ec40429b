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

#include <set>

#include "bifact/error.h"
#include "bifact/io.h"
#include "bifact/pipeline.h"

#ifndef BIFACT_DEFAULT_TEMPLATES_DIR
#define BIFACT_DEFAULT_TEMPLATES_DIR "templates"
#endif

namespace bifact {
namespace {

using nlohmann::json;

[[noreturn]] void Bad(const std::string& why) {
  throw Error(ErrorCode::kConfigError, why);
}

void RejectUnknown(const json& j, const std::string& where,
                   std::initializer_list<const char*> known) {
  if (!j.is_object()) Bad(where + " must be an object");
  const std::set<std::string> allowed(known.begin(), known.end());
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) Bad("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
T Get(const json& j, const char* key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    Bad("'" + std::string(key) + "' in " + where + " has the wrong type");
  }
}

std::chrono::milliseconds Millis(const json& j, const char* key,
                                 const std::string& where) {
  const auto ms = Get<long long>(j, key, where);
  if (ms < 0) Bad("'" + std::string(key) + "' in " + where + " is negative");
  return std::chrono::milliseconds(ms);
}

std::filesystem::path Resolve(const std::string& value,
                              const std::filesystem::path& base) {
  std::filesystem::path p(value);
  if (p.is_relative()) p = base / p;
  return std::filesystem::absolute(p).lexically_normal();
}

void ParseJudge(const json& j, JudgeBackend& out) {
  const std::string where = "judge";
  RejectUnknown(j, where,
                {"kind", "endpoint", "model_name", "max_retries", "timeout_ms",
                 "backoff_ms", "response_path"});
  if (j.contains("kind")) out.kind = ParseJudgeKind(Get<std::string>(j, "kind", where));
  if (j.contains("endpoint")) out.endpoint = Get<std::string>(j, "endpoint", where);
  if (j.contains("model_name")) out.model_name = Get<std::string>(j, "model_name", where);
  if (j.contains("max_retries")) out.max_retries = Get<int>(j, "max_retries", where);
  if (j.contains("timeout_ms")) out.timeout = Millis(j, "timeout_ms", where);
  if (j.contains("backoff_ms")) out.backoff = Millis(j, "backoff_ms", where);
  if (j.contains("response_path")) {
    out.response_path = Get<std::string>(j, "response_path", where);
  }
}

void ParseEmbedding(const json& j, EmbeddingConfig& out) {
  const std::string where = "embedding";
  RejectUnknown(j, where,
                {"kind", "endpoint", "model_name", "dimension", "max_retries",
                 "timeout_ms", "backoff_ms", "response_path"});
  if (j.contains("kind")) out.kind = ParseEmbeddingKind(Get<std::string>(j, "kind", where));
  if (j.contains("endpoint")) out.endpoint = Get<std::string>(j, "endpoint", where);
  if (j.contains("model_name")) out.model_name = Get<std::string>(j, "model_name", where);
  if (j.contains("dimension")) out.dimension = Get<int>(j, "dimension", where);
  if (j.contains("max_retries")) out.max_retries = Get<int>(j, "max_retries", where);
  if (j.contains("timeout_ms")) out.timeout = Millis(j, "timeout_ms", where);
  if (j.contains("backoff_ms")) out.backoff = Millis(j, "backoff_ms", where);
  if (j.contains("response_path")) {
    out.response_path = Get<std::string>(j, "response_path", where);
  }
}

void ParseLexical(const json& j, LexicalOptions& out) {
  const std::string where = "lexical";
  RejectUnknown(j, where, {"bleu_smoothing", "rouge_aggregate"});
  if (j.contains("bleu_smoothing")) {
    const auto v = Get<std::string>(j, "bleu_smoothing", where);
    if (v == "add_one") out.bleu_smoothing = BleuSmoothing::kAddOneHigherOrders;
    else if (v == "none") out.bleu_smoothing = BleuSmoothing::kNone;
    else Bad("bleu_smoothing must be 'add_one' or 'none'");
  }
  if (j.contains("rouge_aggregate")) {
    const auto v = Get<std::string>(j, "rouge_aggregate", where);
    if (v == "f1") out.rouge_aggregate = RougeAggregate::kF1;
    else if (v == "recall") out.rouge_aggregate = RougeAggregate::kRecall;
    else if (v == "precision") out.rouge_aggregate = RougeAggregate::kPrecision;
    else Bad("rouge_aggregate must be 'f1', 'recall' or 'precision'");
  }
}

}  // namespace

std::filesystem::path DefaultTemplatesDir() {
  return BIFACT_DEFAULT_TEMPLATES_DIR;
}

RunConfig DefaultRunConfig() {
  RunConfig config;
  config.templates_dir = DefaultTemplatesDir();
  return config;
}

RunConfig ParseRunConfig(std::string_view json_text,
                         const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    Bad(std::string("config is not valid JSON: ") + e.what());
  }
  const std::string where = "config";
  RejectUnknown(j, where,
                {"judge", "embedding", "lexical", "templates_dir", "cache_dir",
                 "parallelism", "metrics", "dev_fraction", "seed",
                 "empty_prediction_zero"});
  RunConfig config = DefaultRunConfig();
  if (j.contains("judge")) ParseJudge(j["judge"], config.judge);
  if (j.contains("embedding")) ParseEmbedding(j["embedding"], config.embedding);
  if (j.contains("lexical")) ParseLexical(j["lexical"], config.lexical);
  if (j.contains("templates_dir")) {
    config.templates_dir =
        Resolve(Get<std::string>(j, "templates_dir", where), base_dir);
  }
  if (j.contains("cache_dir")) {
    const auto dir = Get<std::string>(j, "cache_dir", where);
    config.cache_dir = dir.empty() ? std::filesystem::path()
                                   : Resolve(dir, base_dir);
  }
  if (j.contains("parallelism")) config.parallelism = Get<int>(j, "parallelism", where);
  if (j.contains("metrics")) {
    config.metrics.clear();
    for (const auto& name : Get<std::vector<std::string>>(j, "metrics", where)) {
      try {
        config.metrics.push_back(ParseMetric(name));
      } catch (const Error& e) {
        Bad(e.what());
      }
    }
  }
  if (j.contains("dev_fraction")) {
    config.dev_fraction = Get<double>(j, "dev_fraction", where);
  }
  if (j.contains("seed")) config.seed = Get<std::uint64_t>(j, "seed", where);
  if (j.contains("empty_prediction_zero")) {
    config.empty_prediction_zero = Get<bool>(j, "empty_prediction_zero", where);
  }
  ValidateRunConfig(config);
  return config;
}

RunConfig LoadRunConfig(const std::filesystem::path& path) {
  const auto absolute = std::filesystem::absolute(path);
  return ParseRunConfig(ReadFile(absolute), absolute.parent_path());
}

void ValidateRunConfig(const RunConfig& config) {
  try {
    ValidateBackend(config.judge);
  } catch (const Error& e) {
    Bad(e.what());
  }
  if (config.embedding.dimension <= 0) Bad("embedding dimension must be > 0");
  if (config.embedding.kind == EmbeddingKind::kHttpEmbed &&
      config.embedding.endpoint.empty()) {
    Bad("http_embed requires an endpoint");
  }
  if (config.parallelism < 1) Bad("parallelism must be >= 1");
  if (config.metrics.empty()) Bad("metric list is empty");
  std::set<MetricKind> seen;
  for (MetricKind m : config.metrics) {
    if (!seen.insert(m).second) {
      Bad("metric '" + std::string(MetricName(m)) + "' listed twice");
    }
  }
  if (!(config.dev_fraction > 0.0 && config.dev_fraction < 1.0)) {
    Bad("dev_fraction must be in (0,1)");
  }
}

}  // namespace bifact
