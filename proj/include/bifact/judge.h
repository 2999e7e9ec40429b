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

// Judge backends: gold factorization, the single-call three-step pair
// assessment, and the judge-mediated baselines (entailment probability and
// whole-intent match).
//
// Every call renders a template, goes through the response cache, and parses
// the judge's JSON answer. Transport errors are retried with exponential
// backoff; a response that fails to parse is re-prompted exactly once.

#ifndef BIFACT_JUDGE_H_
#define BIFACT_JUDGE_H_

#include <atomic>
#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bifact/cache.h"
#include "bifact/core.h"
#include "bifact/templates.h"
#include "json.hpp"

namespace bifact {

enum class JudgeKind { kHttpChat, kMockRule };

std::string_view JudgeKindName(JudgeKind kind);
JudgeKind ParseJudgeKind(std::string_view name);

// Sampling temperature used for every judge call.
inline constexpr double kJudgeTemperature = 0.0;

struct JudgeBackend {
  JudgeKind kind = JudgeKind::kMockRule;
  std::string endpoint;
  std::string model_name = "mock-rule";
  int max_retries = 3;
  std::chrono::milliseconds timeout{60000};
  std::chrono::milliseconds backoff{500};
  // JSON pointer to the assistant text in the chat response.
  std::string response_path = "/choices/0/message/content";
};

// Throws ConfigError when an http_chat backend has no endpoint.
void ValidateBackend(const JudgeBackend& backend);

// What is sent to a transport: the rendered prompt plus the structured
// arguments it was rendered from (the mock backend answers from those).
struct JudgeRequest {
  TemplateName task = TemplateName::kFactorizeGold;
  std::string prompt;
  nlohmann::json arguments;
};

class JudgeTransport {
 public:
  virtual ~JudgeTransport() = default;
  // Returns the judge's raw text answer. Must be thread-safe.
  virtual std::string Complete(const JudgeRequest& request) = 0;
};

// Deterministic rule-based judge:
//   factorization splits on ';' and trims;
//   entailment(premise, hypothesis) = 1 iff the token multiset of the
//   hypothesis is contained in that of the premise;
//   whole-intent match = containment in both directions.
class MockRuleTransport : public JudgeTransport {
 public:
  std::string Complete(const JudgeRequest& request) override;
};

// OpenAI-style chat completion over HTTP. The credential is read from
// BIFACT_API_KEY; it is never taken from configuration files.
class HttpChatTransport : public JudgeTransport {
 public:
  explicit HttpChatTransport(JudgeBackend backend);
  std::string Complete(const JudgeRequest& request) override;

 private:
  JudgeBackend backend_;
  std::string api_key_;
};

std::unique_ptr<JudgeTransport> MakeTransport(const JudgeBackend& backend);

struct AssessmentResponse {
  std::vector<std::string> predicted_facts;
  std::vector<FactLabel> gold_fact_labels;
  std::vector<FactLabel> predicted_fact_labels;
  std::string raw;
};

// Parsers for the judge's JSON answers. All throw ParseFailure with the raw
// text attached. A leading/trailing Markdown code fence is tolerated.
std::vector<std::string> ParseFactorizeResponse(std::string_view raw);
AssessmentResponse ParseAssessResponse(std::string_view raw);
double ParseNliResponse(std::string_view raw);
bool ParseAutoraterResponse(std::string_view raw);

// Splits on ';', trims, drops empty pieces.
std::vector<std::string> SplitClauses(std::string_view text);

struct CachePolicy {
  bool enabled = true;
  // Skip reads but still write fresh responses (--no-cache).
  bool bypass_reads = false;
};

class Judge {
 public:
  Judge(JudgeBackend backend, std::unique_ptr<JudgeTransport> transport,
        TemplateSet templates, std::optional<ResponseCache> cache,
        CachePolicy policy = {});

  FactorizedIntent FactorizeGold(const Intent& intent);
  AssessmentResponse AssessPair(const Intent& gold,
                                const FactorizedIntent& gold_facts,
                                const Intent& predicted);
  double NliScore(std::string_view premise, std::string_view hypothesis);
  bool AutoraterMatch(const Intent& gold, const Intent& predicted);

  // Request builders, exposed for dry runs.
  JudgeRequest FactorizeRequest(const Intent& intent) const;
  JudgeRequest AssessRequest(const Intent& gold,
                             const FactorizedIntent& gold_facts,
                             const Intent& predicted) const;
  JudgeRequest NliRequest(std::string_view premise,
                          std::string_view hypothesis) const;
  JudgeRequest AutoraterRequest(const Intent& gold,
                                const Intent& predicted) const;

  // Cached response or a fresh backend call.
  std::string CacheGetOrCall(const JudgeRequest& request);

  const JudgeBackend& backend() const { return backend_; }
  long backend_calls() const { return backend_calls_.load(); }
  long cache_hits() const { return cache_hits_.load(); }

 private:
  struct Raw {
    std::string text;
    std::string key;
    bool from_cache = false;
  };

  Raw Fetch(const JudgeRequest& request, bool allow_cache_read);
  std::string CallBackend(const JudgeRequest& request);
  void Forget(const Raw& raw);

  // Fetches and parses, with cache recovery and one re-prompt.
  template <typename Parser>
  auto CallAndParse(const JudgeRequest& request, Parser parse);

  JudgeBackend backend_;
  std::unique_ptr<JudgeTransport> transport_;
  TemplateSet templates_;
  std::optional<ResponseCache> cache_;
  CachePolicy policy_;
  std::atomic<long> backend_calls_{0};
  std::atomic<long> cache_hits_{0};
};

}  // namespace bifact

#endif  // BIFACT_JUDGE_H_
