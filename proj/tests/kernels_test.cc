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

#include "bifact/kernels.h"

#include <gtest/gtest.h>

#include <bit>
#include <random>
#include <vector>

#include "bifact/error.h"

namespace bifact::kernels {
namespace {

std::uint64_t Bits(double x) { return std::bit_cast<std::uint64_t>(x); }

// Reference order written out independently of the kernels.
double LaneSum(const std::vector<double>& x) {
  double lane[4] = {0, 0, 0, 0};
  const std::size_t full = x.size() / 4 * 4;
  for (std::size_t i = 0; i < full; ++i) lane[i % 4] += x[i];
  double total = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (std::size_t i = full; i < x.size(); ++i) total += x[i];
  return total;
}

std::vector<double> RandomVector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

TEST(KernelsTest, ScalarMatchesLaneOrder) {
  std::mt19937_64 rng(1);
  for (std::size_t n = 0; n < 40; ++n) {
    const auto x = RandomVector(rng, n);
    EXPECT_EQ(Bits(scalar::Sum(x.data(), n)), Bits(LaneSum(x))) << n;
  }
}

TEST(KernelsTest, ScalarValues) {
  const std::vector<double> x = {1, 2, 3, 4, 5};
  const std::vector<double> y = {2, 2, 2, 2, 2};
  EXPECT_EQ(scalar::Sum(x.data(), 5), 15.0);
  EXPECT_EQ(scalar::Dot(x.data(), y.data(), 5), 30.0);
  const auto m = scalar::Moments(x.data(), x.data(), 5, 3.0, 3.0);
  EXPECT_EQ(m.sxx, 10.0);
  EXPECT_EQ(m.sxy, 10.0);
  const std::vector<double> s = {0.1, 0.5, 0.5, 0.9, 0.2};
  const std::vector<std::uint8_t> l = {1, 0, 1, 1, 0};
  const auto c = scalar::CountAtLeast(s.data(), l.data(), 5, 0.5);
  EXPECT_EQ(c.predicted_positive, 3);
  EXPECT_EQ(c.true_positive, 2);
}

#if defined(BIFACT_HAVE_AVX2)
TEST(KernelsTest, Avx2BitIdenticalToScalar) {
  if (!IsSupported(SimdLevel::kAvx2)) GTEST_SKIP() << "no AVX2 on this CPU";
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = rng() % 67;
    const auto x = RandomVector(rng, n);
    const auto y = RandomVector(rng, n);
    const double mx = unit(rng), my = unit(rng);
    ASSERT_EQ(Bits(scalar::Sum(x.data(), n)), Bits(avx2::Sum(x.data(), n)));
    ASSERT_EQ(Bits(scalar::Dot(x.data(), y.data(), n)),
              Bits(avx2::Dot(x.data(), y.data(), n)));
    const auto a = scalar::Moments(x.data(), y.data(), n, mx, my);
    const auto b = avx2::Moments(x.data(), y.data(), n, mx, my);
    ASSERT_EQ(Bits(a.sxx), Bits(b.sxx));
    ASSERT_EQ(Bits(a.syy), Bits(b.syy));
    ASSERT_EQ(Bits(a.sxy), Bits(b.sxy));

    std::vector<double> scores(n);
    std::vector<std::uint8_t> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
      // Quantized so ties with the threshold actually occur.
      scores[i] = static_cast<double>(rng() % 11) / 10.0;
      labels[i] = static_cast<std::uint8_t>(rng() % 2);
    }
    const double t = static_cast<double>(rng() % 11) / 10.0;
    const auto ca = scalar::CountAtLeast(scores.data(), labels.data(), n, t);
    const auto cb = avx2::CountAtLeast(scores.data(), labels.data(), n, t);
    ASSERT_EQ(ca.predicted_positive, cb.predicted_positive);
    ASSERT_EQ(ca.true_positive, cb.true_positive);
  }
}
#endif

TEST(KernelsTest, DispatchFollowsActiveLevel) {
  const std::vector<double> x = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7};
  SetActiveLevel(SimdLevel::kScalar);
  EXPECT_EQ(ActiveLevel(), SimdLevel::kScalar);
  const double scalar_sum = Sum(x);
  for (SimdLevel level : {SimdLevel::kScalar, SimdLevel::kAvx2}) {
    if (!IsSupported(level)) continue;
    SetActiveLevel(level);
    EXPECT_EQ(ActiveLevel(), level);
    EXPECT_EQ(Bits(Sum(x)), Bits(scalar_sum)) << SimdLevelName(level);
  }
}

TEST(KernelsTest, LengthMismatchThrows) {
  const std::vector<double> x = {1, 2};
  const std::vector<double> y = {1};
  const std::vector<std::uint8_t> l = {1};
  EXPECT_THROW(Dot(x, y), Error);
  EXPECT_THROW(Moments(x, y, 0, 0), Error);
  EXPECT_THROW(CountAtLeast(x, l, 0.5), Error);
}

}  // namespace
}  // namespace bifact::kernels
