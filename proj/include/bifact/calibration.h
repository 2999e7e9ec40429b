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

#ifndef BIFACT_CALIBRATION_H_
#define BIFACT_CALIBRATION_H_

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "bifact/core.h"
#include "bifact/pair_key.h"
#include "bifact/stats.h"

namespace bifact {

inline constexpr int kThresholdCount = 30;

// t_i = 0.01 + i * 0.99 / 29 = (29 + 99 i) / 2900, i = 0..29.
std::array<Fraction, kThresholdCount> ThresholdGridExact();
// Each value is the correctly rounded double of the exact grid point.
std::array<double, kThresholdCount> ThresholdGrid();

struct ThresholdSweepResult {
  MetricKind metric = MetricKind::kBifact;
  std::vector<double> thresholds;
  std::vector<double> f1_at_threshold;
  double best_threshold = 0.0;
  double best_f1 = 0.0;
};

using ScoredPair = std::pair<PairKey, double>;

// F1 of (score >= t) against the human labels at every grid point; keeps the
// smallest threshold reaching the maximum. Labels for pairs without a score
// are ignored. Throws EmptyInput, MissingLabel, DuplicatePair,
// DegenerateLabels or OutOfRange (score outside [0,1]).
ThresholdSweepResult Sweep(std::span<const ScoredPair> scores,
                           std::span<const BinaryJudgment> labels,
                           MetricKind metric);

// Halves of a dev/test split. Distinct types so threshold tuning cannot be
// handed test data by accident.
struct DevSplit {
  std::vector<PairKey> pairs;
};
struct TestSplit {
  std::vector<PairKey> pairs;
};
struct DevTestSplit {
  DevSplit dev;
  TestSplit test;
};

// Groups pairs by gold id, shuffles the groups with a seeded Mersenne
// Twister, and gives the first ceil(dev_fraction * groups) groups to dev.
// Both halves are returned sorted. Throws EmptyInput or OutOfRange.
DevTestSplit SplitDevTest(std::span<const PairKey> pairs, double dev_fraction,
                          std::uint64_t seed);

}  // namespace bifact

#endif  // BIFACT_CALIBRATION_H_
