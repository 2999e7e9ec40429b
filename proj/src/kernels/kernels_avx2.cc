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

// Compiled with -mavx2 and -ffp-contract=off; only reached after a runtime
// CPU check. No FMA: mul and add round separately, like the scalar path.

#include <immintrin.h>

#include <bit>
#include <cstring>

#include "bifact/kernels.h"

namespace bifact::kernels::avx2 {

namespace {
constexpr std::size_t kLanes = 4;

// (l0 + l1) + (l2 + l3)
inline double Reduce(__m256d v) {
  const __m256d pairs = _mm256_hadd_pd(v, v);  // [l0+l1, l0+l1, l2+l3, l2+l3]
  const __m128d lo = _mm256_castpd256_pd128(pairs);
  const __m128d hi = _mm256_extractf128_pd(pairs, 1);
  return _mm_cvtsd_f64(_mm_add_sd(lo, hi));
}
}  // namespace

double Sum(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  }
  double total = Reduce(acc);
  for (; i < n; ++i) total += x[i];
  return total;
}

double Dot(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d prod =
        _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    acc = _mm256_add_pd(acc, prod);
  }
  double total = Reduce(acc);
  for (; i < n; ++i) total += x[i] * y[i];
  return total;
}

CenteredMoments Moments(const double* x, const double* y, std::size_t n,
                        double mean_x, double mean_y) {
  const __m256d mx = _mm256_set1_pd(mean_x);
  const __m256d my = _mm256_set1_pd(mean_y);
  __m256d xx = _mm256_setzero_pd();
  __m256d yy = _mm256_setzero_pd();
  __m256d xy = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(x + i), mx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(y + i), my);
    xx = _mm256_add_pd(xx, _mm256_mul_pd(dx, dx));
    yy = _mm256_add_pd(yy, _mm256_mul_pd(dy, dy));
    xy = _mm256_add_pd(xy, _mm256_mul_pd(dx, dy));
  }
  CenteredMoments m{Reduce(xx), Reduce(yy), Reduce(xy)};
  for (; i < n; ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    m.sxx += dx * dx;
    m.syy += dy * dy;
    m.sxy += dx * dy;
  }
  return m;
}

ThresholdCounts CountAtLeast(const double* scores, const std::uint8_t* labels,
                             std::size_t n, double threshold) {
  const __m256d t = _mm256_set1_pd(threshold);
  const __m256i zero = _mm256_setzero_si256();
  ThresholdCounts c;
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d ge =
        _mm256_cmp_pd(_mm256_loadu_pd(scores + i), t, _CMP_GE_OQ);
    std::int32_t packed;
    std::memcpy(&packed, labels + i, sizeof(packed));
    const __m256i wide = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(packed));
    const __m256i is_zero = _mm256_cmpeq_epi64(wide, zero);
    const int ge_bits = _mm256_movemask_pd(ge);
    const int zero_bits = _mm256_movemask_pd(_mm256_castsi256_pd(is_zero));
    c.predicted_positive += std::popcount(static_cast<unsigned>(ge_bits));
    c.true_positive +=
        std::popcount(static_cast<unsigned>(ge_bits & ~zero_bits & 0xF));
  }
  for (; i < n; ++i) {
    if (scores[i] >= threshold) {
      ++c.predicted_positive;
      if (labels[i] != 0) ++c.true_positive;
    }
  }
  return c;
}

}  // namespace bifact::kernels::avx2
