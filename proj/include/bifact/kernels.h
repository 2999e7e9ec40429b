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

// Numeric inner loops with a scalar reference and an AVX2 variant.
//
// Every floating-point reduction accumulates into four interleaved lanes
// (element i goes to lane i % 4 for the full blocks), combines them as
// (l0 + l1) + (l2 + l3), then adds the tail elements left to right. Neither
// variant uses fused multiply-add, so both produce bit-identical results and
// output files do not depend on the host CPU.
//
// The active level is picked once at startup from CPU features; the
// environment variable BIFACT_SIMD_LEVEL=scalar|avx2 overrides it (an
// unsupported request falls back to scalar).

#ifndef BIFACT_KERNELS_H_
#define BIFACT_KERNELS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace bifact::kernels {

enum class SimdLevel { kScalar, kAvx2 };

std::string_view SimdLevelName(SimdLevel level);
bool IsSupported(SimdLevel level);
SimdLevel ActiveLevel();
// Test hook. Ignored when `level` is not supported by this CPU/build.
void SetActiveLevel(SimdLevel level);

struct CenteredMoments {
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
};

struct ThresholdCounts {
  std::int64_t predicted_positive = 0;
  std::int64_t true_positive = 0;
};

// Dispatching entry points. Spans must have equal length where paired.
double Sum(std::span<const double> x);
double Dot(std::span<const double> x, std::span<const double> y);
CenteredMoments Moments(std::span<const double> x, std::span<const double> y,
                        double mean_x, double mean_y);
// Counts scores >= threshold, and among those the ones whose label is
// nonzero.
ThresholdCounts CountAtLeast(std::span<const double> scores,
                             std::span<const std::uint8_t> labels,
                             double threshold);

namespace scalar {
double Sum(const double* x, std::size_t n);
double Dot(const double* x, const double* y, std::size_t n);
CenteredMoments Moments(const double* x, const double* y, std::size_t n,
                        double mean_x, double mean_y);
ThresholdCounts CountAtLeast(const double* scores, const std::uint8_t* labels,
                             std::size_t n, double threshold);
}  // namespace scalar

#if defined(BIFACT_HAVE_AVX2)
namespace avx2 {
double Sum(const double* x, std::size_t n);
double Dot(const double* x, const double* y, std::size_t n);
CenteredMoments Moments(const double* x, const double* y, std::size_t n,
                        double mean_x, double mean_y);
ThresholdCounts CountAtLeast(const double* scores, const std::uint8_t* labels,
                             std::size_t n, double threshold);
}  // namespace avx2
#endif

}  // namespace bifact::kernels

#endif  // BIFACT_KERNELS_H_
