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

#include "bifact/core.h"

#include <cmath>
#include <numeric>
#include <unordered_map>

#include "bifact/error.h"

namespace bifact {

Fraction::Fraction(std::int64_t numerator, std::int64_t denominator) {
  if (denominator <= 0 || numerator < 0) {
    throw Error(ErrorCode::kOutOfRange,
                "fraction requires numerator >= 0 and denominator > 0");
  }
  const std::int64_t g = std::gcd(numerator, denominator);
  num_ = numerator / g;
  den_ = denominator / g;
}

double Fraction::ToDouble() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

bool operator<(const Fraction& a, const Fraction& b) {
  return static_cast<__int128>(a.num_) * b.den_ <
         static_cast<__int128>(b.num_) * a.den_;
}

namespace {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

std::int64_t CountImplied(std::span<const FactLabel> labels) {
  std::int64_t n = 0;
  for (const auto& label : labels) n += label.implied ? 1 : 0;
  return n;
}

// Reorders `labels` into the order of `facts`, matching by normalized text.
std::vector<FactLabel> AlignLabels(const FactorizedIntent& facts,
                                   std::span<const FactLabel> labels,
                                   std::string_view side,
                                   std::string_view raw_response) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < facts.size(); ++i) index[facts.facts()[i]] = i;

  std::vector<std::optional<bool>> slots(facts.size());
  for (const auto& label : labels) {
    const std::string key = NormalizeWhitespace(label.fact);
    auto it = index.find(key);
    if (it == index.end()) {
      throw Error(ErrorCode::kLabelMismatch,
                  std::string(side) + " label references unknown fact '" +
                      key + "'",
                  std::string(raw_response));
    }
    if (slots[it->second].has_value()) {
      throw Error(ErrorCode::kLabelMismatch,
                  std::string(side) + " fact '" + key + "' labeled twice",
                  std::string(raw_response));
    }
    slots[it->second] = label.implied;
  }

  std::vector<FactLabel> aligned;
  aligned.reserve(facts.size());
  for (std::size_t i = 0; i < facts.size(); ++i) {
    if (!slots[i].has_value()) {
      throw Error(ErrorCode::kLabelMismatch,
                  std::string(side) + " fact '" + facts.facts()[i] +
                      "' has no label",
                  std::string(raw_response));
    }
    aligned.push_back({facts.facts()[i], *slots[i]});
  }
  return aligned;
}

}  // namespace

std::string NormalizeWhitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (IsSpace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

void ValidateIntent(const Intent& intent) {
  if (NormalizeWhitespace(intent.id).empty()) {
    throw Error(ErrorCode::kValidationError, "intent id is empty");
  }
  if (NormalizeWhitespace(intent.text).empty()) {
    throw Error(ErrorCode::kValidationError,
                "intent '" + intent.id + "' has empty text");
  }
}

FactorizedIntent::FactorizedIntent(std::string intent_id,
                                   std::vector<std::string> facts)
    : intent_id_(std::move(intent_id)) {
  facts_.reserve(facts.size());
  for (auto& fact : facts) {
    std::string normalized = NormalizeWhitespace(fact);
    if (normalized.empty()) {
      throw Error(ErrorCode::kValidationError,
                  "intent '" + intent_id_ + "' has an empty fact");
    }
    for (const auto& existing : facts_) {
      if (existing == normalized) {
        throw Error(ErrorCode::kValidationError,
                    "intent '" + intent_id_ + "' repeats fact '" +
                        normalized + "'");
      }
    }
    facts_.push_back(std::move(normalized));
  }
}

std::string_view MetricName(MetricKind metric) {
  switch (metric) {
    case MetricKind::kBifact: return "bifact";
    case MetricKind::kBleu: return "bleu";
    case MetricKind::kRouge1: return "rouge1";
    case MetricKind::kRouge2: return "rouge2";
    case MetricKind::kRougeL: return "rougeL";
    case MetricKind::kMeteor: return "meteor";
    case MetricKind::kNli: return "nli";
    case MetricKind::kEmbedSim: return "embed_sim";
    case MetricKind::kAutorater: return "autorater";
  }
  return "unknown";
}

MetricKind ParseMetric(std::string_view name) {
  for (MetricKind m : kAllMetrics) {
    if (MetricName(m) == name) return m;
  }
  throw Error(ErrorCode::kValidationError,
              "unknown metric '" + std::string(name) + "'");
}

bool IsNativelyBinary(MetricKind metric) {
  return metric == MetricKind::kAutorater;
}

Fraction ComputeRecall(std::span<const FactLabel> gold_fact_labels) {
  if (gold_fact_labels.empty()) {
    throw Error(ErrorCode::kEmptyFactList, "gold intent has no facts");
  }
  return Fraction(CountImplied(gold_fact_labels),
                  static_cast<std::int64_t>(gold_fact_labels.size()));
}

Fraction ComputePrecision(std::span<const FactLabel> predicted_fact_labels) {
  if (predicted_fact_labels.empty()) {
    throw Error(ErrorCode::kEmptyFactList, "predicted intent has no facts");
  }
  return Fraction(CountImplied(predicted_fact_labels),
                  static_cast<std::int64_t>(predicted_fact_labels.size()));
}

double ComputeF1(double precision, double recall) {
  if (!(precision >= 0.0 && precision <= 1.0) ||
      !(recall >= 0.0 && recall <= 1.0)) {
    throw Error(ErrorCode::kOutOfRange, "precision and recall must be in [0,1]");
  }
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

Fraction ComputeF1(const Fraction& precision, const Fraction& recall) {
  const Fraction one(1, 1);
  if (one < precision || one < recall) {
    throw Error(ErrorCode::kOutOfRange, "precision and recall must be in [0,1]");
  }
  // 2(a/b)(c/d) / (a/b + c/d) = 2ac / (ad + cb)
  const std::int64_t a = precision.numerator(), b = precision.denominator();
  const std::int64_t c = recall.numerator(), d = recall.denominator();
  const std::int64_t denominator = a * d + c * b;
  if (denominator == 0) return Fraction(0, 1);
  return Fraction(2 * a * c, denominator);
}

CoverageAssessment AssembleAssessment(std::string pair_id,
                                      const FactorizedIntent& gold_facts,
                                      const FactorizedIntent& predicted_facts,
                                      std::span<const FactLabel> gold_labels,
                                      std::span<const FactLabel> predicted_labels,
                                      std::string_view raw_response,
                                      bool empty_prediction_zero) {
  CoverageAssessment out;
  out.pair_id = std::move(pair_id);
  out.gold_fact_labels =
      AlignLabels(gold_facts, gold_labels, "gold", raw_response);
  out.predicted_facts = predicted_facts;
  out.predicted_fact_labels =
      AlignLabels(predicted_facts, predicted_labels, "predicted", raw_response);

  if (predicted_facts.empty() && empty_prediction_zero) {
    // Gold facts still have to be present; an empty gold side is never scored.
    ComputeRecall(out.gold_fact_labels);
    out.recall = out.precision = out.f1 = Fraction(0, 1);
    return out;
  }
  out.recall = ComputeRecall(out.gold_fact_labels);
  out.precision = ComputePrecision(out.predicted_fact_labels);
  out.f1 = ComputeF1(out.precision, out.recall);
  return out;
}

bool Binarize(double score, double threshold) {
  if (!(score >= 0.0 && score <= 1.0) ||
      !(threshold > 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::kOutOfRange,
                "binarize requires score in [0,1] and threshold in (0,1]");
  }
  return score >= threshold;
}

}  // namespace bifact
