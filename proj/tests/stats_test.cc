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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bifact/error.h"

namespace bifact {
namespace {

std::vector<BinaryJudgment> Judgments(const std::vector<int>& values) {
  std::vector<BinaryJudgment> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out.emplace_back(PairKey{"p" + std::to_string(i), "m"}, values[i] != 0);
  }
  return out;
}

// Student-t density integrated with composite Simpson's rule.
double TCdfByIntegration(double t, double df) {
  const double c = std::exp(std::lgamma((df + 1) / 2) - std::lgamma(df / 2)) /
                   std::sqrt(df * std::numbers::pi);
  auto f = [&](double x) { return c * std::pow(1 + x * x / df, -(df + 1) / 2); };
  const double a = std::fabs(t);
  const int n = 200000;
  const double h = a / n;
  double s = f(0) + f(a);
  for (int i = 1; i < n; ++i) s += f(i * h) * (i % 2 ? 4 : 2);
  const double half = s * h / 3;
  return t >= 0 ? 0.5 + half : 0.5 - half;
}

// Series with an exactly prescribed sample correlation to `x`.
std::vector<double> WithCorrelation(const std::vector<double>& x, double r,
                                    std::mt19937_64& rng) {
  const std::size_t n = x.size();
  auto standardize = [n](std::vector<double> v) {
    double mean = 0;
    for (double e : v) mean += e;
    mean /= static_cast<double>(n);
    double ss = 0;
    for (double& e : v) {
      e -= mean;
      ss += e * e;
    }
    for (double& e : v) e /= std::sqrt(ss);
    return v;
  };
  const auto zx = standardize(x);
  std::normal_distribution<double> g;
  std::vector<double> noise(n);
  for (double& e : noise) e = g(rng);
  noise = standardize(noise);
  double proj = 0;
  for (std::size_t i = 0; i < n; ++i) proj += noise[i] * zx[i];
  for (std::size_t i = 0; i < n; ++i) noise[i] -= proj * zx[i];
  const auto zp = standardize(noise);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = r * zx[i] + std::sqrt(1 - r * r) * zp[i];
  }
  return y;
}

TEST(ConfusionTest, Counts) {
  const auto cm = Confusion(Judgments({1, 1, 1, 1, 1, 0, 0, 0, 0, 0}),
                            Judgments({1, 1, 1, 1, 1, 0, 0, 0, 0, 0}));
  EXPECT_EQ(cm, (ConfusionMatrix{5, 0, 0, 5}));
  const auto all = Confusion(Judgments({1, 1, 1, 1, 1, 1, 1, 1, 1, 1}),
                             Judgments({1, 1, 1, 1, 1, 0, 0, 0, 0, 0}));
  EXPECT_EQ(all, (ConfusionMatrix{5, 5, 0, 0}));
}

TEST(ConfusionTest, Errors) {
  auto pred = Judgments({1, 0, 1});
  auto human = Judgments({1, 0});
  try {
    Confusion(pred, human);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingLabel);
  }
  pred.push_back(pred.front());
  human = Judgments({1, 0, 1});
  try {
    Confusion(pred, human);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDuplicatePair);
  }
}

TEST(ConfusionTest, MatchesBruteForce) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 100);
    std::vector<int> p(n), h(n);
    ConfusionMatrix expected;
    for (int i = 0; i < n; ++i) {
      p[i] = static_cast<int>(rng() % 2);
      h[i] = static_cast<int>(rng() % 2);
      if (p[i] && h[i]) ++expected.tp;
      if (p[i] && !h[i]) ++expected.fp;
      if (!p[i] && h[i]) ++expected.fn;
      if (!p[i] && !h[i]) ++expected.tn;
    }
    auto pj = Judgments(p);
    std::shuffle(pj.begin(), pj.end(), rng);
    const auto cm = Confusion(pj, Judgments(h));
    ASSERT_EQ(cm, expected);
    const auto report = MakeAgreementReport(cm, MetricKind::kBleu, 0.5);
    const double prec = expected.tp + expected.fp
                            ? double(expected.tp) / (expected.tp + expected.fp)
                            : 0.0;
    const double rec = expected.tp + expected.fn
                           ? double(expected.tp) / (expected.tp + expected.fn)
                           : 0.0;
    ASSERT_DOUBLE_EQ(report.precision, prec);
    ASSERT_DOUBLE_EQ(report.recall, rec);
    ASSERT_NEAR(report.f1, prec + rec > 0 ? 2 * prec * rec / (prec + rec) : 0.0,
                1e-15);
    ASSERT_EQ(report.n, n);
  }
}

TEST(KappaTest, HandExample) {
  const auto cm = Confusion(Judgments({1, 1, 0, 0, 0, 1}),
                            Judgments({1, 1, 1, 0, 0, 0}));
  EXPECT_NEAR(CohenKappa(cm), 1.0 / 3.0, 1e-12);
}

TEST(KappaTest, PerfectChanceAndDegenerate) {
  EXPECT_EQ(CohenKappa({5, 0, 0, 5}), 1.0);
  // p_o = 1/2, p_e = 1/2.
  EXPECT_EQ(CohenKappa({1, 1, 1, 1}), 0.0);
  try {
    CohenKappa({4, 0, 0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateMarginals);
  }
  EXPECT_THROW(CohenKappa({0, 0, 0, 0}), Error);
  EXPECT_FALSE(MakeAgreementReport({4, 0, 0, 0}, MetricKind::kBleu, 0.5).kappa);
}

TEST(KappaTest, ClassSwapInvariance) {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 1000; ++i) {
    const ConfusionMatrix cm{static_cast<std::int64_t>(rng() % 20 + 1),
                             static_cast<std::int64_t>(rng() % 20),
                             static_cast<std::int64_t>(rng() % 20),
                             static_cast<std::int64_t>(rng() % 20 + 1)};
    const ConfusionMatrix swapped{cm.tn, cm.fn, cm.fp, cm.tp};
    ASSERT_NEAR(CohenKappa(cm), CohenKappa(swapped), 1e-15);
  }
}

TEST(AgreementTest, Examples) {
  const auto r = MakeAgreementReport({3, 1, 2, 4}, MetricKind::kBifact, 0.7);
  EXPECT_DOUBLE_EQ(r.precision, 0.75);
  EXPECT_DOUBLE_EQ(r.recall, 0.6);
  EXPECT_NEAR(r.f1, 2 * 0.75 * 0.6 / 1.35, 1e-15);
  EXPECT_NEAR(r.f1, 0.667, 5e-4);
  EXPECT_EQ(r.threshold_used, 0.7);
  EXPECT_EQ(r.n, 10);
  const auto perfect = MakeAgreementReport({3, 0, 0, 1}, MetricKind::kBifact, 0.5);
  EXPECT_EQ(perfect.f1, 1.0);
  const auto zero = MakeAgreementReport({0, 2, 3, 1}, MetricKind::kBifact, 0.5);
  EXPECT_EQ(zero.precision, 0.0);
  EXPECT_EQ(zero.recall, 0.0);
  EXPECT_EQ(zero.f1, 0.0);
}

TEST(PearsonTest, PerfectLinearity) {
  const std::vector<double> x = {1, 2, 3}, y = {2, 4, 6}, z = {6, 4, 2};
  EXPECT_EQ(Pearson(x, y).r, 1.0);
  EXPECT_EQ(Pearson(x, z).r, -1.0);
  EXPECT_EQ(Pearson(x, y).p_value, 0.0);
}

TEST(PearsonTest, Errors) {
  const std::vector<double> x = {1, 2, 3}, c = {5, 5, 5}, s = {1, 2};
  try {
    Pearson(x, c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConstantSeries);
  }
  try {
    Pearson(x, s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLengthMismatch);
  }
  EXPECT_THROW(Pearson(s, s), Error);
}

TEST(PearsonTest, ReferenceSignificance) {
  // t = r sqrt(34 / (1 - r^2)) for n = 36.
  const double r1 = 0.781;
  EXPECT_NEAR(r1 * std::sqrt(34 / (1 - r1 * r1)), 7.29, 0.01);
  EXPECT_LT(CorrelationPValue(0.781, 36), 0.001);
  const double p2 = CorrelationPValue(0.517, 36);
  EXPECT_GE(p2, 0.0005);
  EXPECT_LE(p2, 0.002);

  std::mt19937_64 rng(53);
  std::vector<double> x(36);
  std::uniform_real_distribution<double> u(0, 1);
  for (double& e : x) e = u(rng);
  const auto y = WithCorrelation(x, 0.781, rng);
  const auto report = Pearson(x, y);
  EXPECT_NEAR(report.r, 0.781, 1e-12);
  EXPECT_EQ(report.n, 36);
  EXPECT_NEAR(report.t, 7.29, 0.01);
  EXPECT_LT(report.p_value, 0.001);
}

TEST(PearsonTest, SymmetryAndAffineInvariance) {
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 3 + rng() % 40;
    std::vector<double> x(n), y(n), ax(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = u(rng);
      y[i] = u(rng);
    }
    const double a = 0.1 + std::fabs(u(rng)), b = u(rng);
    for (std::size_t i = 0; i < n; ++i) ax[i] = a * x[i] + b;
    const auto xy = Pearson(x, y);
    ASSERT_NEAR(xy.r, Pearson(y, x).r, 1e-12);
    ASSERT_NEAR(xy.r, Pearson(ax, y).r, 1e-12);
    ASSERT_GE(xy.p_value, 0.0);
    ASSERT_LE(xy.p_value, 1.0);
    ASSERT_LE(std::fabs(xy.r), 1.0);
  }
}

TEST(StudentTTest, MatchesNumericalIntegration) {
  for (double df : {1.0, 5.0, 34.0, 100.0}) {
    for (double t = -10.0; t <= 10.0; t += 0.25) {
      ASSERT_NEAR(StudentTCdf(t, df), TCdfByIntegration(t, df), 1e-7)
          << "df=" << df << " t=" << t;
    }
  }
}

TEST(StudentTTest, KnownValues) {
  // Cauchy: F(1) = 3/4.
  EXPECT_NEAR(StudentTCdf(1.0, 1.0), 0.75, 1e-12);
  EXPECT_EQ(StudentTCdf(0.0, 7.0), 0.5);
  EXPECT_NEAR(StudentTCdf(2.0, 2.0), 0.5 + 1.0 / std::sqrt(6.0), 1e-12);
}

TEST(IncompleteBetaTest, ClosedForms) {
  // I_x(1, 1) = x; I_x(a, 1) = x^a; I_x(1, b) = 1 - (1 - x)^b.
  for (double x : {0.0, 0.1, 0.37, 0.5, 0.9, 1.0}) {
    EXPECT_NEAR(RegularizedIncompleteBeta(1, 1, x), x, 1e-14);
    EXPECT_NEAR(RegularizedIncompleteBeta(3.5, 1, x), std::pow(x, 3.5), 1e-13);
    EXPECT_NEAR(RegularizedIncompleteBeta(1, 2.5, x), 1 - std::pow(1 - x, 2.5),
                1e-13);
  }
  EXPECT_THROW(RegularizedIncompleteBeta(1, 1, 1.5), Error);
}

TEST(TableTest, LayoutHasAgreementColumns) {
  std::vector<AgreementReport> rows;
  rows.push_back(MakeAgreementReport({3, 1, 2, 4}, MetricKind::kBifact, 0.5));
  rows.push_back(MakeAgreementReport({4, 0, 0, 0}, MetricKind::kRougeL, 0.5));
  const std::string table = FormatAgreementTable(rows);
  EXPECT_EQ(table.substr(0, table.find('\n')),
            "Metric   Precision     Recall         F1      Kappa");
  EXPECT_NE(table.find("Bi-Fact      0.750      0.600      0.667      0.400"),
            std::string::npos);
  EXPECT_NE(table.find("ROUGE-L"), std::string::npos);
  EXPECT_NE(table.find("n/a"), std::string::npos);
}

}  // namespace
}  // namespace bifact
