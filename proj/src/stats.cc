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

#include "bifact/stats.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

#include "bifact/error.h"
#include "bifact/kernels.h"

namespace bifact {
namespace {

std::map<PairKey, bool> IndexJudgments(std::span<const BinaryJudgment> items,
                                       const char* what) {
  std::map<PairKey, bool> index;
  for (const auto& [key, value] : items) {
    if (!index.emplace(key, value).second) {
      throw Error(ErrorCode::kDuplicatePair,
                  std::string(what) + " lists " + key.ToString() + " twice");
    }
  }
  return index;
}

double SafeRatio(std::int64_t num, std::int64_t den) {
  return den == 0 ? 0.0
                  : static_cast<double>(num) / static_cast<double>(den);
}

// Continued fraction for I_x(a,b), modified Lentz. Converges quickly for
// x < (a + 1) / (a + b + 2).
double BetaContinuedFraction(double a, double b, double x) {
  constexpr int kMaxIterations = 10000;
  constexpr double kEpsilon = 1e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEpsilon) return h;
  }
  throw Error(ErrorCode::kOutOfRange,
              "incomplete beta continued fraction did not converge");
}

}  // namespace

ConfusionMatrix Confusion(std::span<const BinaryJudgment> predictions,
                          std::span<const BinaryJudgment> human) {
  const auto predicted = IndexJudgments(predictions, "predictions");
  const auto labels = IndexJudgments(human, "human labels");
  ConfusionMatrix cm;
  for (const auto& [key, value] : predicted) {
    auto it = labels.find(key);
    if (it == labels.end()) {
      throw Error(ErrorCode::kMissingLabel,
                  "no human label for " + key.ToString());
    }
    const bool truth = it->second;
    if (value && truth) ++cm.tp;
    else if (value) ++cm.fp;
    else if (truth) ++cm.fn;
    else ++cm.tn;
  }
  for (const auto& [key, value] : labels) {
    if (!predicted.contains(key)) {
      throw Error(ErrorCode::kMissingLabel,
                  "no metric judgment for " + key.ToString());
    }
  }
  return cm;
}

double CohenKappa(const ConfusionMatrix& cm) {
  const std::int64_t n = cm.total();
  if (n <= 0) throw Error(ErrorCode::kEmptyInput, "empty confusion matrix");
  // Work in counts scaled by n^2 so p_e == 1 is detected exactly.
  const __int128 n2 = static_cast<__int128>(n) * n;
  const __int128 agree = static_cast<__int128>(cm.tp + cm.tn) * n;
  const __int128 chance =
      static_cast<__int128>(cm.tp + cm.fp) * (cm.tp + cm.fn) +
      static_cast<__int128>(cm.fn + cm.tn) * (cm.fp + cm.tn);
  if (chance == n2) {
    throw Error(ErrorCode::kDegenerateMarginals,
                "expected agreement is 1; kappa undefined");
  }
  return static_cast<double>(agree - chance) / static_cast<double>(n2 - chance);
}

AgreementReport MakeAgreementReport(const ConfusionMatrix& cm,
                                    MetricKind metric, double threshold) {
  AgreementReport r;
  r.metric = metric;
  r.precision = SafeRatio(cm.tp, cm.tp + cm.fp);
  r.recall = SafeRatio(cm.tp, cm.tp + cm.fn);
  r.f1 = ComputeF1(r.precision, r.recall);
  try {
    r.kappa = CohenKappa(cm);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kDegenerateMarginals &&
        e.code() != ErrorCode::kEmptyInput) {
      throw;
    }
  }
  r.threshold_used = threshold;
  r.n = cm.total();
  return r;
}

double RegularizedIncompleteBeta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0) || !(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorCode::kOutOfRange, "incomplete beta argument out of range");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) -
                           std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * BetaContinuedFraction(a, b, x) / a;
  }
  return 1.0 - front * BetaContinuedFraction(b, a, 1.0 - x) / b;
}

double StudentTCdf(double t, double df) {
  if (!(df > 0.0)) throw Error(ErrorCode::kOutOfRange, "df must be positive");
  if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  const double x = df / (df + t * t);
  const double tail = 0.5 * RegularizedIncompleteBeta(0.5 * df, 0.5, x);
  return t > 0.0 ? 1.0 - tail : tail;
}

double CorrelationPValue(double r, std::int64_t n) {
  if (n < 3) throw Error(ErrorCode::kEmptyInput, "correlation needs n >= 3");
  if (!(r >= -1.0 && r <= 1.0)) {
    throw Error(ErrorCode::kOutOfRange, "correlation outside [-1,1]");
  }
  const double df = static_cast<double>(n - 2);
  const double r2 = r * r;
  if (r2 >= 1.0) return 0.0;
  // With t^2 = df r^2 / (1 - r^2): df / (df + t^2) = 1 - r^2, and the
  // two-tailed p-value is I_{1-r^2}(df/2, 1/2).
  return RegularizedIncompleteBeta(0.5 * df, 0.5, 1.0 - r2);
}

CorrelationReport Pearson(std::span<const double> x,
                          std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kLengthMismatch, "series differ in length");
  }
  if (x.size() < 3) throw Error(ErrorCode::kEmptyInput, "pearson needs n >= 3");
  const double n = static_cast<double>(x.size());
  const double mean_x = kernels::Sum(x) / n;
  const double mean_y = kernels::Sum(y) / n;
  const kernels::CenteredMoments m = kernels::Moments(x, y, mean_x, mean_y);
  if (m.sxx == 0.0 || m.syy == 0.0) {
    throw Error(ErrorCode::kConstantSeries, "a series is constant");
  }
  CorrelationReport report;
  report.n = static_cast<std::int64_t>(x.size());
  report.r = std::clamp(m.sxy / std::sqrt(m.sxx * m.syy), -1.0, 1.0);
  const double r2 = report.r * report.r;
  report.t = r2 >= 1.0 ? std::copysign(std::numeric_limits<double>::infinity(),
                                       report.r)
                       : report.r * std::sqrt((n - 2.0) / (1.0 - r2));
  report.p_value = CorrelationPValue(report.r, report.n);
  return report;
}

std::string MetricDisplayName(MetricKind metric) {
  switch (metric) {
    case MetricKind::kBifact: return "Bi-Fact";
    case MetricKind::kBleu: return "BLEU";
    case MetricKind::kRouge1: return "ROUGE-1";
    case MetricKind::kRouge2: return "ROUGE-2";
    case MetricKind::kRougeL: return "ROUGE-L";
    case MetricKind::kMeteor: return "METEOR";
    case MetricKind::kNli: return "NLI";
    case MetricKind::kEmbedSim: return "Embed sim";
    case MetricKind::kAutorater: return "AutoRater";
  }
  return "?";
}

std::string FormatAgreementTable(std::span<const AgreementReport> rows) {
  std::size_t name_width = 6;
  for (const auto& row : rows) {
    name_width = std::max(name_width, MetricDisplayName(row.metric).size());
  }
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(name_width)) << "Metric"
      << std::right;
  for (const char* col : {"Precision", "Recall", "F1", "Kappa"}) {
    out << "  " << std::setw(9) << col;
  }
  out << '\n';
  out << std::fixed << std::setprecision(3);
  for (const auto& row : rows) {
    out << std::left << std::setw(static_cast<int>(name_width))
        << MetricDisplayName(row.metric) << std::right;
    out << "  " << std::setw(9) << row.precision;
    out << "  " << std::setw(9) << row.recall;
    out << "  " << std::setw(9) << row.f1;
    if (row.kappa) {
      out << "  " << std::setw(9) << *row.kappa;
    } else {
      out << "  " << std::setw(9) << "n/a";
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace bifact
