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

// Reference kernels. The lane structure mirrors the 256-bit variant exactly;
// do not "simplify" the loops or the reduction order.

#include "bifact/kernels.h"

namespace bifact::kernels::scalar {

namespace {
constexpr std::size_t kLanes = 4;

inline double Reduce(const double (&lane)[kLanes]) {
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}
}  // namespace

double Sum(const double* x, std::size_t n) {
  double lane[kLanes] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    for (std::size_t k = 0; k < kLanes; ++k) lane[k] += x[i + k];
  }
  double total = Reduce(lane);
  for (; i < n; ++i) total += x[i];
  return total;
}

double Dot(const double* x, const double* y, std::size_t n) {
  double lane[kLanes] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    for (std::size_t k = 0; k < kLanes; ++k) lane[k] += x[i + k] * y[i + k];
  }
  double total = Reduce(lane);
  for (; i < n; ++i) total += x[i] * y[i];
  return total;
}

CenteredMoments Moments(const double* x, const double* y, std::size_t n,
                        double mean_x, double mean_y) {
  double xx[kLanes] = {0.0, 0.0, 0.0, 0.0};
  double yy[kLanes] = {0.0, 0.0, 0.0, 0.0};
  double xy[kLanes] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    for (std::size_t k = 0; k < kLanes; ++k) {
      const double dx = x[i + k] - mean_x;
      const double dy = y[i + k] - mean_y;
      xx[k] += dx * dx;
      yy[k] += dy * dy;
      xy[k] += dx * dy;
    }
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
  ThresholdCounts c;
  for (std::size_t i = 0; i < n; ++i) {
    if (scores[i] >= threshold) {
      ++c.predicted_positive;
      if (labels[i] != 0) ++c.true_positive;
    }
  }
  return c;
}

}  // namespace bifact::kernels::scalar
