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

#include "bifact/calibration.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <string>

#include "bifact/error.h"
#include "bifact/kernels.h"

namespace bifact {
namespace {

// Uniform draw from [0, bound) by rejection; std::uniform_int_distribution
// is not specified bit-for-bit across standard libraries.
std::uint64_t UniformBelow(std::mt19937_64& engine, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine();
  } while (x >= limit);
  return x % bound;
}

}  // namespace

std::array<Fraction, kThresholdCount> ThresholdGridExact() {
  std::array<Fraction, kThresholdCount> grid;
  for (int i = 0; i < kThresholdCount; ++i) grid[i] = Fraction(29 + 99 * i, 2900);
  return grid;
}

std::array<double, kThresholdCount> ThresholdGrid() {
  std::array<double, kThresholdCount> grid;
  const auto exact = ThresholdGridExact();
  for (int i = 0; i < kThresholdCount; ++i) grid[i] = exact[i].ToDouble();
  return grid;
}

ThresholdSweepResult Sweep(std::span<const ScoredPair> scores,
                           std::span<const BinaryJudgment> labels,
                           MetricKind metric) {
  if (scores.empty()) throw Error(ErrorCode::kEmptyInput, "no scores to sweep");
  std::map<PairKey, bool> label_of;
  for (const auto& [key, value] : labels) {
    if (!label_of.emplace(key, value).second) {
      throw Error(ErrorCode::kDuplicatePair,
                  "label for " + key.ToString() + " given twice");
    }
  }
  // Canonical order so the result never depends on input order.
  std::vector<ScoredPair> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> values;
  std::vector<std::uint8_t> truth;
  std::int64_t positives = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const auto& [key, score] = sorted[i];
    if (i > 0 && sorted[i - 1].first == key) {
      throw Error(ErrorCode::kDuplicatePair,
                  "score for " + key.ToString() + " given twice");
    }
    if (!(score >= 0.0 && score <= 1.0)) {
      throw Error(ErrorCode::kOutOfRange,
                  "score for " + key.ToString() + " outside [0,1]");
    }
    auto it = label_of.find(key);
    if (it == label_of.end()) {
      throw Error(ErrorCode::kMissingLabel, "no label for " + key.ToString());
    }
    values.push_back(score);
    truth.push_back(it->second ? 1 : 0);
    positives += it->second ? 1 : 0;
  }
  const auto n = static_cast<std::int64_t>(values.size());
  if (positives == 0 || positives == n) {
    throw Error(ErrorCode::kDegenerateLabels,
                "sweep needs both positive and negative labels");
  }

  ThresholdSweepResult result;
  result.metric = metric;
  const auto grid = ThresholdGrid();
  Fraction best(0, 1);
  bool have_best = false;
  for (double threshold : grid) {
    const kernels::ThresholdCounts counts =
        kernels::CountAtLeast(values, truth, threshold);
    const std::int64_t tp = counts.true_positive;
    const std::int64_t fp = counts.predicted_positive - tp;
    const std::int64_t fn = positives - tp;
    // F1 = 2tp / (2tp + fp + fn); exact so ties are detected exactly.
    const Fraction f1 = tp == 0 ? Fraction(0, 1) : Fraction(2 * tp, 2 * tp + fp + fn);
    result.thresholds.push_back(threshold);
    result.f1_at_threshold.push_back(f1.ToDouble());
    if (!have_best || best < f1) {
      best = f1;
      result.best_threshold = threshold;
      have_best = true;
    }
  }
  result.best_f1 = best.ToDouble();
  return result;
}

DevTestSplit SplitDevTest(std::span<const PairKey> pairs, double dev_fraction,
                          std::uint64_t seed) {
  if (pairs.empty()) throw Error(ErrorCode::kEmptyInput, "nothing to split");
  if (!(dev_fraction > 0.0 && dev_fraction < 1.0)) {
    throw Error(ErrorCode::kOutOfRange, "dev_fraction must be in (0,1)");
  }
  const std::set<std::string> id_set = [&] {
    std::set<std::string> s;
    for (const auto& p : pairs) s.insert(p.id);
    return s;
  }();
  std::vector<std::string> groups(id_set.begin(), id_set.end());

  std::mt19937_64 engine(seed);
  for (std::size_t i = groups.size(); i > 1; --i) {
    std::swap(groups[i - 1], groups[UniformBelow(engine, i)]);
  }
  // The epsilon keeps products such as 0.7 * 10 = 7.000000000000001 from
  // rounding up to an extra group.
  const double wanted = dev_fraction * static_cast<double>(groups.size());
  const auto dev_groups = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(wanted - 1e-9)));
  const std::set<std::string> dev_ids(groups.begin(),
                                      groups.begin() + dev_groups);

  DevTestSplit split;
  for (const auto& p : pairs) {
    (dev_ids.contains(p.id) ? split.dev.pairs : split.test.pairs).push_back(p);
  }
  std::sort(split.dev.pairs.begin(), split.dev.pairs.end());
  std::sort(split.test.pairs.begin(), split.test.pairs.end());
  split.dev.pairs.erase(
      std::unique(split.dev.pairs.begin(), split.dev.pairs.end()),
      split.dev.pairs.end());
  split.test.pairs.erase(
      std::unique(split.test.pairs.begin(), split.test.pairs.end()),
      split.test.pairs.end());
  return split;
}

}  // namespace bifact
