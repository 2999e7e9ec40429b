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

// Comparison metrics that do not decompose intents: lexical overlap (BLEU,
// ROUGE-1/2/L, METEOR), embedding cosine similarity, and bidirectional
// entailment through the judge. All scores lie in [0,1].

#ifndef BIFACT_BASELINES_H_
#define BIFACT_BASELINES_H_

#include <chrono>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bifact/judge.h"
#include "bifact/text.h"

namespace bifact {

enum class BleuSmoothing {
  kAddOneHigherOrders,  // (m + 1) / (c + 1) for orders >= 2
  kNone,
};

enum class RougeAggregate { kF1, kRecall, kPrecision };

struct LexicalOptions {
  BleuSmoothing bleu_smoothing = BleuSmoothing::kAddOneHigherOrders;
  RougeAggregate rouge_aggregate = RougeAggregate::kF1;
};

// Sentence BLEU, n-gram orders 1..4 with uniform weights and brevity
// penalty. Empty candidate scores 0. Throws EmptyReference.
double Bleu(const TokenSequence& reference, const TokenSequence& candidate,
            BleuSmoothing smoothing = BleuSmoothing::kAddOneHigherOrders);

// Clipped n-gram overlap, n in {1, 2}. Throws EmptyReference when the
// reference has fewer than n tokens.
double RougeN(const TokenSequence& reference, const TokenSequence& candidate,
              int n, RougeAggregate aggregate = RougeAggregate::kF1);

// Longest-common-subsequence overlap. Throws EmptyReference.
double RougeL(const TokenSequence& reference, const TokenSequence& candidate,
              RougeAggregate aggregate = RougeAggregate::kF1);

std::size_t LongestCommonSubsequence(const TokenSequence& a,
                                     const TokenSequence& b);

struct MeteorAlignment {
  std::size_t matches = 0;
  std::size_t chunks = 0;
};

// Exact-match unigram alignment with the maximum number of matches and, among
// those, the fewest chunks. Candidate positions are explored left to right.
MeteorAlignment AlignForMeteor(const TokenSequence& reference,
                               const TokenSequence& candidate);

// Exact-match METEOR: F_mean = 10PR / (R + 9P), penalty 0.5 (chunks/m)^3.
// Throws EmptyReference.
double Meteor(const TokenSequence& reference, const TokenSequence& candidate);

enum class EmbeddingKind { kHttpEmbed, kMockHash };

struct EmbeddingConfig {
  EmbeddingKind kind = EmbeddingKind::kMockHash;
  std::string endpoint;
  std::string model_name = "mock-hash";
  int dimension = 256;
  int max_retries = 3;
  std::chrono::milliseconds timeout{60000};
  std::chrono::milliseconds backoff{500};
  // JSON pointer to the array of vectors in the response.
  std::string response_path = "/embeddings";
};

EmbeddingKind ParseEmbeddingKind(std::string_view name);
std::string_view EmbeddingKindName(EmbeddingKind kind);

class EmbeddingBackend {
 public:
  virtual ~EmbeddingBackend() = default;
  virtual int dimension() const = 0;
  // Must be thread-safe.
  virtual std::vector<double> Embed(std::string_view text) = 0;
};

// Sum over tokens of a unit vector drawn from a generator seeded with the
// token's SHA-256. Identical on every platform.
class MockHashEmbedding : public EmbeddingBackend {
 public:
  explicit MockHashEmbedding(int dimension);
  int dimension() const override { return dimension_; }
  std::vector<double> Embed(std::string_view text) override;

  std::vector<double> TokenVector(std::string_view token) const;

 private:
  int dimension_;
};

// POST {model, input: [text]} -> {embeddings: [[number]]}.
class HttpEmbedding : public EmbeddingBackend {
 public:
  explicit HttpEmbedding(EmbeddingConfig config);
  int dimension() const override { return config_.dimension; }
  std::vector<double> Embed(std::string_view text) override;

 private:
  EmbeddingConfig config_;
  std::optional<std::string> api_key_;
};

std::unique_ptr<EmbeddingBackend> MakeEmbeddingBackend(
    const EmbeddingConfig& config);

// max(0, cos(a, b)). Throws ZeroVector or LengthMismatch.
double CosineSimilarity(std::span<const double> a, std::span<const double> b);

double EmbedSimilarity(EmbeddingBackend& backend, std::string_view a,
                       std::string_view b);

// Mean of the entailment scores in both directions.
double BidirectionalNli(Judge& judge, std::string_view gold,
                        std::string_view predicted);

}  // namespace bifact

#endif  // BIFACT_BASELINES_H_
