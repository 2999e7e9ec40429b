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

#include <atomic>
#include <cstdlib>
#include <string>

#include "bifact/error.h"
#include "bifact/kernels.h"

namespace bifact::kernels {
namespace {

bool CpuHasAvx2() {
#if defined(BIFACT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

SimdLevel DetectLevel() {
  const SimdLevel best = CpuHasAvx2() ? SimdLevel::kAvx2 : SimdLevel::kScalar;
  if (const char* env = std::getenv("BIFACT_SIMD_LEVEL")) {
    const std::string requested(env);
    if (requested == "scalar") return SimdLevel::kScalar;
    if (requested == "avx2" && best == SimdLevel::kAvx2) return best;
    return SimdLevel::kScalar;
  }
  return best;
}

std::atomic<SimdLevel>& Level() {
  static std::atomic<SimdLevel> level{DetectLevel()};
  return level;
}

void CheckSameLength(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::kLengthMismatch, "kernel inputs differ in length");
  }
}

}  // namespace

std::string_view SimdLevelName(SimdLevel level) {
  return level == SimdLevel::kAvx2 ? "avx2" : "scalar";
}

bool IsSupported(SimdLevel level) {
  return level == SimdLevel::kScalar || CpuHasAvx2();
}

SimdLevel ActiveLevel() { return Level().load(std::memory_order_relaxed); }

void SetActiveLevel(SimdLevel level) {
  if (IsSupported(level)) Level().store(level, std::memory_order_relaxed);
}

double Sum(std::span<const double> x) {
#if defined(BIFACT_HAVE_AVX2)
  if (ActiveLevel() == SimdLevel::kAvx2) return avx2::Sum(x.data(), x.size());
#endif
  return scalar::Sum(x.data(), x.size());
}

double Dot(std::span<const double> x, std::span<const double> y) {
  CheckSameLength(x.size(), y.size());
#if defined(BIFACT_HAVE_AVX2)
  if (ActiveLevel() == SimdLevel::kAvx2) {
    return avx2::Dot(x.data(), y.data(), x.size());
  }
#endif
  return scalar::Dot(x.data(), y.data(), x.size());
}

CenteredMoments Moments(std::span<const double> x, std::span<const double> y,
                        double mean_x, double mean_y) {
  CheckSameLength(x.size(), y.size());
#if defined(BIFACT_HAVE_AVX2)
  if (ActiveLevel() == SimdLevel::kAvx2) {
    return avx2::Moments(x.data(), y.data(), x.size(), mean_x, mean_y);
  }
#endif
  return scalar::Moments(x.data(), y.data(), x.size(), mean_x, mean_y);
}

ThresholdCounts CountAtLeast(std::span<const double> scores,
                             std::span<const std::uint8_t> labels,
                             double threshold) {
  CheckSameLength(scores.size(), labels.size());
#if defined(BIFACT_HAVE_AVX2)
  if (ActiveLevel() == SimdLevel::kAvx2) {
    return avx2::CountAtLeast(scores.data(), labels.data(), scores.size(),
                              threshold);
  }
#endif
  return scalar::CountAtLeast(scores.data(), labels.data(), scores.size(),
                              threshold);
}

}  // namespace bifact::kernels
