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

#include "bifact/judge.h"

#include <cmath>

#include "bifact/error.h"
#include "bifact/http.h"
#include "bifact/io.h"
#include "bifact/text.h"

namespace bifact {
namespace {

using nlohmann::json;

std::string_view StripCodeFence(std::string_view raw) {
  auto trim = [](std::string_view s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string_view::npos) return std::string_view();
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
  };
  std::string_view s = trim(raw);
  if (s.size() >= 6 && s.substr(0, 3) == "```" &&
      s.substr(s.size() - 3) == "```") {
    const auto first_newline = s.find('\n');
    if (first_newline == std::string_view::npos) return s;
    s = s.substr(first_newline + 1, s.size() - first_newline - 1 - 3);
    return trim(s);
  }
  return s;
}

[[noreturn]] void Fail(const std::string& why, std::string_view raw) {
  throw Error(ErrorCode::kParseFailure, why, std::string(raw));
}

json ParseObject(std::string_view raw) {
  json doc;
  try {
    doc = json::parse(StripCodeFence(raw));
  } catch (const json::exception& e) {
    Fail(std::string("response is not valid JSON: ") + e.what(), raw);
  }
  if (!doc.is_object()) Fail("response is not a JSON object", raw);
  return doc;
}

std::vector<std::string> StringArray(const json& doc, const char* field,
                                     std::string_view raw) {
  if (!doc.contains(field) || !doc[field].is_array()) {
    Fail(std::string("'") + field + "' must be an array of strings", raw);
  }
  std::vector<std::string> out;
  for (const auto& item : doc[field]) {
    if (!item.is_string()) {
      Fail(std::string("'") + field + "' must contain only strings", raw);
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::vector<FactLabel> LabelArray(const json& doc, const char* field,
                                  std::string_view raw) {
  if (!doc.contains(field) || !doc[field].is_array()) {
    Fail(std::string("'") + field + "' must be an array", raw);
  }
  std::vector<FactLabel> out;
  for (const auto& item : doc[field]) {
    if (!item.is_object() || !item.contains("fact") ||
        !item["fact"].is_string() || !item.contains("implied") ||
        !item["implied"].is_boolean()) {
      Fail(std::string("each '") + field +
               "' entry needs a string 'fact' and a boolean 'implied'",
           raw);
    }
    out.push_back({item["fact"].get<std::string>(), item["implied"].get<bool>()});
  }
  return out;
}

std::string NumberedList(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += '\n';
    out += std::to_string(i + 1) + ". " + items[i];
  }
  return out;
}

void RequireText(std::string_view text, std::string_view what) {
  if (NormalizeWhitespace(text).empty()) {
    throw Error(ErrorCode::kValidationError,
                std::string(what) + " text is empty; not sent to the judge");
  }
}

bool Entails(std::string_view premise, std::string_view hypothesis) {
  return TokenMultisetContains(Tokenize(premise), Tokenize(hypothesis));
}

}  // namespace

std::string_view JudgeKindName(JudgeKind kind) {
  return kind == JudgeKind::kHttpChat ? "http_chat" : "mock_rule";
}

JudgeKind ParseJudgeKind(std::string_view name) {
  if (name == "http_chat") return JudgeKind::kHttpChat;
  if (name == "mock_rule") return JudgeKind::kMockRule;
  throw Error(ErrorCode::kConfigError,
              "unknown judge kind '" + std::string(name) + "'");
}

void ValidateBackend(const JudgeBackend& backend) {
  if (backend.kind == JudgeKind::kHttpChat && backend.endpoint.empty()) {
    throw Error(ErrorCode::kConfigError, "http_chat judge requires an endpoint");
  }
  if (backend.model_name.empty()) {
    throw Error(ErrorCode::kConfigError, "judge model_name is empty");
  }
  if (backend.max_retries < 0) {
    throw Error(ErrorCode::kConfigError, "max_retries must be >= 0");
  }
}

std::vector<std::string> SplitClauses(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    std::string piece = NormalizeWhitespace(text.substr(start, end - start));
    if (!piece.empty()) out.push_back(std::move(piece));
    start = end + 1;
  }
  return out;
}

std::string MockRuleTransport::Complete(const JudgeRequest& request) {
  const json& args = request.arguments;
  json answer;
  switch (request.task) {
    case TemplateName::kFactorizeGold:
      answer["facts"] = SplitClauses(args.at("gold_intent").get<std::string>());
      break;
    case TemplateName::kAssess: {
      const auto gold = args.at("gold_intent").get<std::string>();
      const auto predicted = args.at("predicted_intent").get<std::string>();
      const auto predicted_facts = SplitClauses(predicted);
      json gold_labels = json::array();
      for (const auto& fact : args.at("gold_facts")) {
        const auto text = fact.get<std::string>();
        gold_labels.push_back({{"fact", text}, {"implied", Entails(predicted, text)}});
      }
      json predicted_labels = json::array();
      for (const auto& fact : predicted_facts) {
        predicted_labels.push_back({{"fact", fact}, {"implied", Entails(gold, fact)}});
      }
      answer["predicted_facts"] = predicted_facts;
      answer["gold_fact_labels"] = std::move(gold_labels);
      answer["predicted_fact_labels"] = std::move(predicted_labels);
      break;
    }
    case TemplateName::kNliEntailment:
      answer["entailment_probability"] =
          Entails(args.at("premise").get<std::string>(),
                  args.at("hypothesis").get<std::string>())
              ? 1.0
              : 0.0;
      break;
    case TemplateName::kAutoraterMatch: {
      const auto gold = args.at("gold_intent").get<std::string>();
      const auto predicted = args.at("predicted_intent").get<std::string>();
      answer["match"] = Entails(gold, predicted) && Entails(predicted, gold);
      break;
    }
  }
  return answer.dump();
}

HttpChatTransport::HttpChatTransport(JudgeBackend backend)
    : backend_(std::move(backend)) {
  ValidateBackend(backend_);
  auto key = ApiKeyFromEnvironment();
  if (!key) {
    throw Error(ErrorCode::kConfigError,
                std::string("http_chat judge requires ") + kApiKeyEnv);
  }
  api_key_ = std::move(*key);
}

std::string HttpChatTransport::Complete(const JudgeRequest& request) {
  const json body = {
      {"model", backend_.model_name},
      {"messages", json::array({{{"role", "user"}, {"content", request.prompt}}})},
      {"temperature", kJudgeTemperature},
  };
  const std::string response =
      PostJson(backend_.endpoint, body, backend_.timeout, api_key_);
  json doc;
  try {
    doc = json::parse(response);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kBackendUnavailable,
                std::string("chat response is not JSON: ") + e.what(),
                response);
  }
  const json& text = ResolvePointer(doc, backend_.response_path, response);
  if (!text.is_string()) {
    throw Error(ErrorCode::kParseFailure,
                "assistant text at '" + backend_.response_path +
                    "' is not a string",
                response);
  }
  return text.get<std::string>();
}

std::unique_ptr<JudgeTransport> MakeTransport(const JudgeBackend& backend) {
  ValidateBackend(backend);
  if (backend.kind == JudgeKind::kHttpChat) {
    return std::make_unique<HttpChatTransport>(backend);
  }
  return std::make_unique<MockRuleTransport>();
}

std::vector<std::string> ParseFactorizeResponse(std::string_view raw) {
  return StringArray(ParseObject(raw), "facts", raw);
}

AssessmentResponse ParseAssessResponse(std::string_view raw) {
  const json doc = ParseObject(raw);
  AssessmentResponse out;
  out.predicted_facts = StringArray(doc, "predicted_facts", raw);
  out.gold_fact_labels = LabelArray(doc, "gold_fact_labels", raw);
  out.predicted_fact_labels = LabelArray(doc, "predicted_fact_labels", raw);
  out.raw = std::string(raw);
  return out;
}

double ParseNliResponse(std::string_view raw) {
  const json doc = ParseObject(raw);
  if (!doc.contains("entailment_probability") ||
      !doc["entailment_probability"].is_number()) {
    Fail("'entailment_probability' must be a number", raw);
  }
  const double p = doc["entailment_probability"].get<double>();
  if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
    Fail("'entailment_probability' outside [0,1]", raw);
  }
  return p;
}

bool ParseAutoraterResponse(std::string_view raw) {
  const json doc = ParseObject(raw);
  if (!doc.contains("match") || !doc["match"].is_boolean()) {
    Fail("'match' must be a boolean", raw);
  }
  return doc["match"].get<bool>();
}

Judge::Judge(JudgeBackend backend, std::unique_ptr<JudgeTransport> transport,
             TemplateSet templates, std::optional<ResponseCache> cache,
             CachePolicy policy)
    : backend_(std::move(backend)),
      transport_(std::move(transport)),
      templates_(std::move(templates)),
      cache_(std::move(cache)),
      policy_(policy) {
  ValidateBackend(backend_);
}

JudgeRequest Judge::FactorizeRequest(const Intent& intent) const {
  JudgeRequest r;
  r.task = TemplateName::kFactorizeGold;
  r.prompt = templates_.Get(r.task).Render({{"gold_intent", intent.text}});
  r.arguments = {{"gold_intent", intent.text}};
  return r;
}

JudgeRequest Judge::AssessRequest(const Intent& gold,
                                  const FactorizedIntent& gold_facts,
                                  const Intent& predicted) const {
  JudgeRequest r;
  r.task = TemplateName::kAssess;
  r.prompt = templates_.Get(r.task).Render({
      {"gold_intent", gold.text},
      {"gold_facts", NumberedList(gold_facts.facts())},
      {"predicted_intent", predicted.text},
  });
  r.arguments = {{"gold_intent", gold.text},
                 {"gold_facts", gold_facts.facts()},
                 {"predicted_intent", predicted.text}};
  return r;
}

JudgeRequest Judge::NliRequest(std::string_view premise,
                               std::string_view hypothesis) const {
  JudgeRequest r;
  r.task = TemplateName::kNliEntailment;
  r.prompt = templates_.Get(r.task).Render(
      {{"premise", std::string(premise)}, {"hypothesis", std::string(hypothesis)}});
  r.arguments = {{"premise", premise}, {"hypothesis", hypothesis}};
  return r;
}

JudgeRequest Judge::AutoraterRequest(const Intent& gold,
                                     const Intent& predicted) const {
  JudgeRequest r;
  r.task = TemplateName::kAutoraterMatch;
  r.prompt = templates_.Get(r.task).Render(
      {{"gold_intent", gold.text}, {"predicted_intent", predicted.text}});
  r.arguments = {{"gold_intent", gold.text},
                 {"predicted_intent", predicted.text}};
  return r;
}

std::string Judge::CallBackend(const JudgeRequest& request) {
  return WithTransportRetries(backend_.max_retries, backend_.backoff, [&] {
    backend_calls_.fetch_add(1);
    return transport_->Complete(request);
  });
}

Judge::Raw Judge::Fetch(const JudgeRequest& request, bool allow_cache_read) {
  Raw raw;
  if (cache_ && policy_.enabled) {
    raw.key = ResponseCache::Key(JudgeKindName(backend_.kind),
                                 backend_.model_name, request.prompt);
    if (allow_cache_read && !policy_.bypass_reads) {
      if (auto entry = cache_->Get(raw.key)) {
        cache_hits_.fetch_add(1);
        raw.text = std::move(entry->value);
        raw.from_cache = true;
        return raw;
      }
    }
  }
  raw.text = CallBackend(request);
  if (!raw.key.empty()) cache_->Put(raw.key, raw.text);
  return raw;
}

void Judge::Forget(const Raw& raw) {
  if (cache_ && !raw.key.empty()) cache_->Erase(raw.key);
}

std::string Judge::CacheGetOrCall(const JudgeRequest& request) {
  return Fetch(request, true).text;
}

template <typename Parser>
auto Judge::CallAndParse(const JudgeRequest& request, Parser parse) {
  Raw raw = Fetch(request, true);
  std::string failure;
  try {
    return parse(raw.text);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kParseFailure) throw;
    Forget(raw);
    failure = e.what();
  }
  if (raw.from_cache) {
    LogWarning("discarding unusable cache entry " + raw.key);
    raw = Fetch(request, false);
    try {
      return parse(raw.text);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kParseFailure) throw;
      Forget(raw);
      failure = e.what();
    }
  }
  JudgeRequest retry = request;
  retry.prompt += "\n\nYour previous answer could not be used (" + failure +
                  "). Answer again with only the JSON object.";
  Raw second = Fetch(retry, true);
  try {
    return parse(second.text);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kParseFailure) throw;
    Forget(second);
    throw Error(ErrorCode::kParseFailure,
                std::string("after re-prompt: ") + e.what(), second.text);
  }
}

FactorizedIntent Judge::FactorizeGold(const Intent& intent) {
  if (intent.kind != IntentKind::kGold) {
    throw Error(ErrorCode::kValidationError,
                "factorize_gold expects a gold intent, got '" + intent.id + "'");
  }
  RequireText(intent.text, "gold intent '" + intent.id + "'");
  return CallAndParse(FactorizeRequest(intent), [&](const std::string& raw) {
    auto facts = ParseFactorizeResponse(raw);
    if (facts.empty()) {
      throw Error(ErrorCode::kEmptyFactorization,
                  "gold intent '" + intent.id + "' factorized to no facts", raw);
    }
    try {
      return FactorizedIntent(intent.id, std::move(facts));
    } catch (const Error& e) {
      Fail(e.what(), raw);
    }
  });
}

AssessmentResponse Judge::AssessPair(const Intent& gold,
                                     const FactorizedIntent& gold_facts,
                                     const Intent& predicted) {
  RequireText(gold.text, "gold intent '" + gold.id + "'");
  RequireText(predicted.text, "predicted intent '" + predicted.id + "'");
  if (gold_facts.empty()) {
    throw Error(ErrorCode::kEmptyFactList,
                "gold intent '" + gold.id + "' has no facts");
  }
  return CallAndParse(AssessRequest(gold, gold_facts, predicted),
                      [&](const std::string& raw) {
                        auto response = ParseAssessResponse(raw);
                        try {
                          FactorizedIntent check(predicted.id,
                                                 response.predicted_facts);
                        } catch (const Error& e) {
                          Fail(e.what(), raw);
                        }
                        return response;
                      });
}

double Judge::NliScore(std::string_view premise, std::string_view hypothesis) {
  RequireText(premise, "premise");
  RequireText(hypothesis, "hypothesis");
  return CallAndParse(NliRequest(premise, hypothesis), [](const std::string& raw) {
    return ParseNliResponse(raw);
  });
}

bool Judge::AutoraterMatch(const Intent& gold, const Intent& predicted) {
  RequireText(gold.text, "gold intent '" + gold.id + "'");
  RequireText(predicted.text, "predicted intent '" + predicted.id + "'");
  return CallAndParse(AutoraterRequest(gold, predicted),
                      [](const std::string& raw) {
                        return ParseAutoraterResponse(raw);
                      });
}

}  // namespace bifact
