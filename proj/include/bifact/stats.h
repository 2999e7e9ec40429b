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

// Agreement of binary metric judgments with human labels, and Pearson
// correlation with two-tailed Student-t significance.

#ifndef BIFACT_STATS_H_
#define BIFACT_STATS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bifact/core.h"
#include "bifact/pair_key.h"

namespace bifact {

struct ConfusionMatrix {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::int64_t tn = 0;

  std::int64_t total() const { return tp + fp + fn + tn; }
  friend bool operator==(const ConfusionMatrix&,
                         const ConfusionMatrix&) = default;
};

using BinaryJudgment = std::pair<PairKey, bool>;

// Human label is ground truth, metric judgment is the prediction. Both lists
// must cover the same pairs. Throws MissingLabel or DuplicatePair.
ConfusionMatrix Confusion(std::span<const BinaryJudgment> predictions,
                          std::span<const BinaryJudgment> human);

// (p_o - p_e) / (1 - p_e). Throws DegenerateMarginals when p_e == 1 and
// EmptyInput for an empty matrix.
double CohenKappa(const ConfusionMatrix& cm);

struct AgreementReport {
  MetricKind metric = MetricKind::kBifact;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  // Empty when kappa is undefined (every judgment and label in one class).
  std::optional<double> kappa;
  double threshold_used = 0.0;
  std::int64_t n = 0;
};

AgreementReport MakeAgreementReport(const ConfusionMatrix& cm,
                                    MetricKind metric, double threshold);

struct CorrelationReport {
  double r = 0.0;
  double t = 0.0;
  double p_value = 1.0;
  std::int64_t n = 0;
};

// Product-moment correlation with a two-tailed p-value from a Student-t
// distribution with n - 2 degrees of freedom. Throws LengthMismatch,
// EmptyInput (n < 3) or ConstantSeries.
CorrelationReport Pearson(std::span<const double> x, std::span<const double> y);

// Two-tailed p-value of a correlation coefficient over n samples.
double CorrelationPValue(double r, std::int64_t n);

// I_x(a, b), evaluated by a continued fraction (modified Lentz).
double RegularizedIncompleteBeta(double a, double b, double x);

// P(T <= t) for Student's t with `df` > 0 degrees of freedom.
double StudentTCdf(double t, double df);

// Row label used in report tables, e.g. "ROUGE-L".
std::string MetricDisplayName(MetricKind metric);

// Aligned text table with columns Metric, Precision, Recall, F1, Kappa.
std::string FormatAgreementTable(std::span<const AgreementReport> rows);

}  // namespace bifact

#endif  // BIFACT_STATS_H_
