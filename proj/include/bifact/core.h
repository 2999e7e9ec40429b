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

// Domain types and scoring arithmetic for bidirectional fact coverage.
//
// A gold and a predicted intent are each decomposed into atomic facts. Every
// gold fact is labeled implied / not implied by the predicted intent (recall)
// and every predicted fact by the gold intent (precision). Scores are kept as
// exact fractions and only converted to double when serialized.

#ifndef BIFACT_CORE_H_
#define BIFACT_CORE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bifact {

// Non-negative rational number in lowest terms. Denominator is never zero.
class Fraction {
 public:
  constexpr Fraction() = default;
  Fraction(std::int64_t numerator, std::int64_t denominator);

  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }

  // Correctly rounded conversion (single IEEE division of exact operands).
  double ToDouble() const;

  friend bool operator==(const Fraction& a, const Fraction& b) = default;
  friend bool operator<(const Fraction& a, const Fraction& b);
  friend bool operator<=(const Fraction& a, const Fraction& b) {
    return !(b < a);
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// Trims surrounding whitespace and collapses internal runs to one space.
// Case is preserved.
std::string NormalizeWhitespace(std::string_view text);

enum class IntentKind { kGold, kPredicted };

struct Intent {
  std::string id;
  std::string text;
  IntentKind kind = IntentKind::kGold;
  std::optional<std::string> model;
  std::optional<std::string> source;
};

// Throws ValidationError when id or text is empty after trimming.
void ValidateIntent(const Intent& intent);

class FactorizedIntent {
 public:
  FactorizedIntent() = default;
  // Facts are stored whitespace-normalized. Throws ValidationError on an
  // empty fact or on two facts that normalize to the same string.
  FactorizedIntent(std::string intent_id, std::vector<std::string> facts);

  const std::string& intent_id() const { return intent_id_; }
  const std::vector<std::string>& facts() const { return facts_; }
  bool empty() const { return facts_.empty(); }
  std::size_t size() const { return facts_.size(); }

  friend bool operator==(const FactorizedIntent&,
                         const FactorizedIntent&) = default;

 private:
  std::string intent_id_;
  std::vector<std::string> facts_;
};

struct FactLabel {
  std::string fact;
  bool implied = false;

  friend bool operator==(const FactLabel&, const FactLabel&) = default;
};

struct CoverageAssessment {
  std::string pair_id;
  std::vector<FactLabel> gold_fact_labels;
  FactorizedIntent predicted_facts;
  std::vector<FactLabel> predicted_fact_labels;
  Fraction recall;
  Fraction precision;
  Fraction f1;
};

enum class MetricKind {
  kBifact,
  kBleu,
  kRouge1,
  kRouge2,
  kRougeL,
  kMeteor,
  kNli,
  kEmbedSim,
  kAutorater,
};

inline constexpr MetricKind kAllMetrics[] = {
    MetricKind::kBifact, MetricKind::kBleu,    MetricKind::kRouge1,
    MetricKind::kRouge2, MetricKind::kRougeL,  MetricKind::kMeteor,
    MetricKind::kNli,    MetricKind::kEmbedSim, MetricKind::kAutorater,
};

std::string_view MetricName(MetricKind metric);
// Throws ValidationError for unknown names.
MetricKind ParseMetric(std::string_view name);
// Metrics whose judge output is already binary and skip threshold tuning.
bool IsNativelyBinary(MetricKind metric);

// Recall over gold-fact labels. Throws EmptyFactList on an empty list.
Fraction ComputeRecall(std::span<const FactLabel> gold_fact_labels);
// Precision over predicted-fact labels. Throws EmptyFactList on an empty list.
Fraction ComputePrecision(std::span<const FactLabel> predicted_fact_labels);

// Harmonic mean; 0 when both inputs are 0. Throws OutOfRange outside [0,1].
double ComputeF1(double precision, double recall);
Fraction ComputeF1(const Fraction& precision, const Fraction& recall);

// Aligns labels to facts by normalized text and derives the scores.
// `raw_response` is attached to a LabelMismatch error for debugging.
// With `empty_prediction_zero`, an empty predicted fact list scores 0/0/0
// instead of raising EmptyFactList.
CoverageAssessment AssembleAssessment(
    std::string pair_id, const FactorizedIntent& gold_facts,
    const FactorizedIntent& predicted_facts,
    std::span<const FactLabel> gold_labels,
    std::span<const FactLabel> predicted_labels,
    std::string_view raw_response = {}, bool empty_prediction_zero = false);

// score >= threshold. Throws OutOfRange unless score in [0,1] and threshold
// in (0,1].
bool Binarize(double score, double threshold);

}  // namespace bifact

#endif  // BIFACT_CORE_H_
