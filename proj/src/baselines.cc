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

#include "bifact/baselines.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <unordered_map>

#include "bifact/error.h"
#include "bifact/http.h"
#include "bifact/io.h"
#include "bifact/kernels.h"

namespace bifact {
namespace {

using NgramCounts = std::map<std::string, long>;

NgramCounts CountNgrams(const TokenSequence& seq, std::size_t n) {
  NgramCounts counts;
  if (seq.size() < n) return counts;
  for (std::size_t i = 0; i + n <= seq.size(); ++i) {
    std::string key = seq[i];
    for (std::size_t k = 1; k < n; ++k) {
      key += '\x1f';
      key += seq[i + k];
    }
    ++counts[key];
  }
  return counts;
}

long ClippedOverlap(const NgramCounts& reference, const NgramCounts& candidate) {
  long overlap = 0;
  for (const auto& [gram, count] : candidate) {
    auto it = reference.find(gram);
    if (it != reference.end()) overlap += std::min(count, it->second);
  }
  return overlap;
}

double Aggregate(double precision, double recall, RougeAggregate aggregate) {
  switch (aggregate) {
    case RougeAggregate::kRecall: return recall;
    case RougeAggregate::kPrecision: return precision;
    case RougeAggregate::kF1: break;
  }
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

void RequireReference(const TokenSequence& reference, std::size_t min_tokens) {
  if (reference.size() < std::max<std::size_t>(min_tokens, 1)) {
    throw Error(ErrorCode::kEmptyReference,
                "reference has fewer than " + std::to_string(min_tokens) +
                    " tokens");
  }
}

// Branch-and-bound search for the fewest-chunk maximal alignment.
class MeteorAligner {
 public:
  MeteorAligner(const TokenSequence& reference, const TokenSequence& candidate) {
    std::unordered_map<std::string, int> ids;
    auto id_of = [&](const std::string& token) {
      return ids.emplace(token, static_cast<int>(ids.size())).first->second;
    };
    for (std::size_t j = 0; j < reference.size(); ++j) {
      const int id = id_of(reference[j]);
      if (ref_positions_.size() <= static_cast<std::size_t>(id)) {
        ref_positions_.resize(id + 1);
      }
      ref_positions_[id].push_back(static_cast<int>(j));
    }
    for (std::size_t i = 0; i < candidate.size(); ++i) {
      cand_types_.push_back(id_of(candidate[i]));
    }
    ref_positions_.resize(ids.size());
    remaining_.assign(ids.size(), 0);
    need_.assign(ids.size(), 0);
    for (int t : cand_types_) ++remaining_[t];
    for (std::size_t t = 0; t < ids.size(); ++t) {
      need_[t] = std::min<long>(remaining_[t],
                                static_cast<long>(ref_positions_[t].size()));
      matches_ += static_cast<std::size_t>(need_[t]);
    }
    used_.assign(reference.size(), false);
  }

  MeteorAlignment Run() {
    if (matches_ == 0) return {0, 0};
    Search(0, -1, 0);
    return {matches_, best_chunks_};
  }

 private:
  static constexpr long kNodeBudget = 2'000'000;

  void Search(std::size_t i, int prev_ref, std::size_t chunks) {
    if (chunks >= best_chunks_) return;
    if (++nodes_ > kNodeBudget && best_chunks_ != kUnset) return;
    if (i == cand_types_.size()) {
      best_chunks_ = chunks;
      return;
    }
    const int t = cand_types_[i];
    --remaining_[t];
    if (need_[t] > 0) {
      const auto& positions = ref_positions_[t];
      const int adjacent = prev_ref >= 0 ? prev_ref + 1 : -1;
      auto try_match = [&](int j) {
        used_[j] = true;
        --need_[t];
        Search(i + 1, j, chunks + (j == adjacent ? 0 : 1));
        ++need_[t];
        used_[j] = false;
      };
      // Continuing the current chunk first makes the first leaf a good bound.
      if (adjacent >= 0 &&
          std::binary_search(positions.begin(), positions.end(), adjacent) &&
          !used_[adjacent]) {
        try_match(adjacent);
      }
      for (int j : positions) {
        if (j != adjacent && !used_[j]) try_match(j);
      }
    }
    if (remaining_[t] >= need_[t]) Search(i + 1, -1, chunks);
    ++remaining_[t];
  }

  static constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

  std::vector<std::vector<int>> ref_positions_;
  std::vector<int> cand_types_;
  std::vector<long> remaining_;
  std::vector<long> need_;
  std::vector<bool> used_;
  std::size_t matches_ = 0;
  std::size_t best_chunks_ = kUnset;
  long nodes_ = 0;
};

}  // namespace

double Bleu(const TokenSequence& reference, const TokenSequence& candidate,
            BleuSmoothing smoothing) {
  RequireReference(reference, 1);
  if (candidate.empty()) return 0.0;
  constexpr int kMaxOrder = 4;
  double log_sum = 0.0;
  for (int n = 1; n <= kMaxOrder; ++n) {
    const NgramCounts cand = CountNgrams(candidate, n);
    const long matches = ClippedOverlap(CountNgrams(reference, n), cand);
    const long total =
        std::max<long>(static_cast<long>(candidate.size()) - n + 1, 0);
    double precision;
    if (n >= 2 && smoothing == BleuSmoothing::kAddOneHigherOrders) {
      precision = static_cast<double>(matches + 1) / static_cast<double>(total + 1);
    } else {
      if (matches == 0 || total == 0) return 0.0;
      precision = static_cast<double>(matches) / static_cast<double>(total);
    }
    log_sum += std::log(precision);
  }
  const double c = static_cast<double>(candidate.size());
  const double r = static_cast<double>(reference.size());
  const double brevity = c < r ? std::exp(1.0 - r / c) : 1.0;
  const double score = brevity * std::exp(log_sum / kMaxOrder);
  return std::clamp(score, 0.0, 1.0);
}

double RougeN(const TokenSequence& reference, const TokenSequence& candidate,
              int n, RougeAggregate aggregate) {
  if (n != 1 && n != 2) {
    throw Error(ErrorCode::kOutOfRange, "ROUGE-N supports n = 1 or 2");
  }
  RequireReference(reference, static_cast<std::size_t>(n));
  if (candidate.size() < static_cast<std::size_t>(n)) return 0.0;
  const NgramCounts ref = CountNgrams(reference, n);
  const NgramCounts cand = CountNgrams(candidate, n);
  const double overlap = static_cast<double>(ClippedOverlap(ref, cand));
  const double recall = overlap / static_cast<double>(reference.size() - n + 1);
  const double precision =
      overlap / static_cast<double>(candidate.size() - n + 1);
  return Aggregate(precision, recall, aggregate);
}

std::size_t LongestCommonSubsequence(const TokenSequence& a,
                                     const TokenSequence& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), row(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      row[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1
                                    : std::max(prev[j], row[j - 1]);
    }
    std::swap(prev, row);
  }
  return prev[b.size()];
}

double RougeL(const TokenSequence& reference, const TokenSequence& candidate,
              RougeAggregate aggregate) {
  RequireReference(reference, 1);
  if (candidate.empty()) return 0.0;
  const double lcs =
      static_cast<double>(LongestCommonSubsequence(reference, candidate));
  return Aggregate(lcs / static_cast<double>(candidate.size()),
                   lcs / static_cast<double>(reference.size()), aggregate);
}

MeteorAlignment AlignForMeteor(const TokenSequence& reference,
                               const TokenSequence& candidate) {
  return MeteorAligner(reference, candidate).Run();
}

double Meteor(const TokenSequence& reference, const TokenSequence& candidate) {
  RequireReference(reference, 1);
  if (candidate.empty()) return 0.0;
  const MeteorAlignment alignment = AlignForMeteor(reference, candidate);
  if (alignment.matches == 0) return 0.0;
  const double m = static_cast<double>(alignment.matches);
  const double precision = m / static_cast<double>(candidate.size());
  const double recall = m / static_cast<double>(reference.size());
  const double f_mean = 10.0 * precision * recall / (recall + 9.0 * precision);
  const double fragmentation = static_cast<double>(alignment.chunks) / m;
  const double penalty = 0.5 * fragmentation * fragmentation * fragmentation;
  return std::clamp(f_mean * (1.0 - penalty), 0.0, 1.0);
}

EmbeddingKind ParseEmbeddingKind(std::string_view name) {
  if (name == "http_embed") return EmbeddingKind::kHttpEmbed;
  if (name == "mock_hash") return EmbeddingKind::kMockHash;
  throw Error(ErrorCode::kConfigError,
              "unknown embedding kind '" + std::string(name) + "'");
}

std::string_view EmbeddingKindName(EmbeddingKind kind) {
  return kind == EmbeddingKind::kHttpEmbed ? "http_embed" : "mock_hash";
}

MockHashEmbedding::MockHashEmbedding(int dimension) : dimension_(dimension) {
  if (dimension <= 0) {
    throw Error(ErrorCode::kConfigError, "embedding dimension must be positive");
  }
}

std::vector<double> MockHashEmbedding::TokenVector(std::string_view token) const {
  const auto digest = Sha256(token);
  std::uint64_t seed = 0;
  for (int i = 0; i < 8; ++i) seed |= std::uint64_t{digest[i]} << (8 * i);
  // The engine's output sequence is fixed by the standard; distributions are
  // not, so the conversion to [-1, 1) is done by hand.
  std::mt19937_64 engine(seed);
  std::vector<double> v(static_cast<std::size_t>(dimension_));
  for (double& x : v) {
    x = static_cast<double>(engine() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
  }
  const double norm = std::sqrt(kernels::Dot(v, v));
  for (double& x : v) x /= norm;
  return v;
}

std::vector<double> MockHashEmbedding::Embed(std::string_view text) {
  std::vector<double> sum(static_cast<std::size_t>(dimension_), 0.0);
  const TokenSequence tokens = Tokenize(text);
  for (const auto& token : tokens.tokens()) {
    const auto v = TokenVector(token);
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += v[k];
  }
  return sum;
}

HttpEmbedding::HttpEmbedding(EmbeddingConfig config)
    : config_(std::move(config)), api_key_(ApiKeyFromEnvironment()) {
  if (config_.endpoint.empty()) {
    throw Error(ErrorCode::kConfigError, "http_embed requires an endpoint");
  }
  if (config_.dimension <= 0) {
    throw Error(ErrorCode::kConfigError, "embedding dimension must be positive");
  }
}

std::vector<double> HttpEmbedding::Embed(std::string_view text) {
  const nlohmann::json body = {{"model", config_.model_name},
                               {"input", nlohmann::json::array({text})}};
  const std::string response =
      WithTransportRetries(config_.max_retries, config_.backoff, [&] {
        return PostJson(config_.endpoint, body, config_.timeout, api_key_);
      });
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(response);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseFailure,
                std::string("embedding response is not JSON: ") + e.what(),
                response);
  }
  const auto& vectors = ResolvePointer(doc, config_.response_path, response);
  if (!vectors.is_array() || vectors.size() != 1 || !vectors[0].is_array()) {
    throw Error(ErrorCode::kParseFailure,
                "expected exactly one embedding vector", response);
  }
  std::vector<double> out;
  for (const auto& x : vectors[0]) {
    if (!x.is_number()) {
      throw Error(ErrorCode::kParseFailure, "embedding has a non-number",
                  response);
    }
    out.push_back(x.get<double>());
  }
  if (out.size() != static_cast<std::size_t>(config_.dimension)) {
    throw Error(ErrorCode::kParseFailure,
                "embedding dimension " + std::to_string(out.size()) +
                    " != configured " + std::to_string(config_.dimension),
                response);
  }
  return out;
}

std::unique_ptr<EmbeddingBackend> MakeEmbeddingBackend(
    const EmbeddingConfig& config) {
  if (config.kind == EmbeddingKind::kHttpEmbed) {
    return std::make_unique<HttpEmbedding>(config);
  }
  return std::make_unique<MockHashEmbedding>(config.dimension);
}

double CosineSimilarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kLengthMismatch, "embedding dimensions differ");
  }
  const double aa = kernels::Dot(a, a);
  const double bb = kernels::Dot(b, b);
  if (aa == 0.0 || bb == 0.0) {
    throw Error(ErrorCode::kZeroVector, "embedding has zero norm");
  }
  if (std::equal(a.begin(), a.end(), b.begin())) return 1.0;
  const double cosine = kernels::Dot(a, b) / std::sqrt(aa * bb);
  return std::clamp(cosine, 0.0, 1.0);
}

double EmbedSimilarity(EmbeddingBackend& backend, std::string_view a,
                       std::string_view b) {
  if (NormalizeWhitespace(a).empty() || NormalizeWhitespace(b).empty()) {
    throw Error(ErrorCode::kValidationError, "embedding input is empty");
  }
  const auto va = backend.Embed(a);
  const auto vb = backend.Embed(b);
  return CosineSimilarity(va, vb);
}

double BidirectionalNli(Judge& judge, std::string_view gold,
                        std::string_view predicted) {
  const double forward = judge.NliScore(gold, predicted);
  const double backward = judge.NliScore(predicted, gold);
  return (forward + backward) / 2.0;
}

}  // namespace bifact
