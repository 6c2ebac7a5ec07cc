// Copyright 2026 The FDP Accountant Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fdp/conversions.h"

#include <cmath>

#include "fdp/tradeoff.h"
#include "gtest/gtest.h"

namespace fdp {
namespace {

double Phi(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

TEST(GdpToDelta, ReferenceValues) {
  EXPECT_NEAR(*GdpToDelta(1.0, 0.0), 2.0 * Phi(0.5) - 1.0, 1e-15);
  EXPECT_NEAR(*GdpToDelta(1.0, 0.0), 0.38292, 1e-5);
  EXPECT_NEAR(*GdpToDelta(1.0, 1.0), Phi(-0.5) - std::exp(1.0) * Phi(-1.5),
              1e-15);
  EXPECT_NEAR(*GdpToDelta(1.0, 1.0), 0.12693, 1e-5);
  EXPECT_EQ(*GdpToDelta(0.0, 0.0), 0.0);
  EXPECT_EQ(*GdpToDelta(0.0, 3.0), 0.0);
  EXPECT_FALSE(GdpToDelta(-1.0, 1.0).ok());
  EXPECT_FALSE(GdpToDelta(1.0, -1.0).ok());
}

TEST(GdpToDelta, Monotone) {
  for (double mu : {0.2, 1.0, 3.0}) {
    double prev = 1.0;
    for (double eps = 0.0; eps < 20.0; eps += 0.25) {
      const double d = *GdpToDelta(mu, eps);
      EXPECT_LE(d, prev);
      EXPECT_GE(d, 0.0);
      EXPECT_LE(d, *GdpToDelta(mu * 1.1, eps) + 1e-300);
      prev = d;
    }
  }
}

TEST(GdpToEps, RoundTrip) {
  for (double mu = 0.1; mu <= 10.0; mu *= 1.4) {
    for (double eps : {0.1, 0.7, 2.0, 5.0}) {
      const double delta = *GdpToDelta(mu, eps);
      if (delta < 1e-300) continue;
      EXPECT_NEAR(*GdpToEps(mu, delta), eps, 1e-9) << mu << " " << eps;
    }
  }
  EXPECT_EQ(*GdpToEps(1.0, 0.5), 0.0);
  EXPECT_LT(*GdpToEps(1e-6, 1e-5), 1e-4);
  EXPECT_FALSE(GdpToEps(1.0, 0.0).ok());
  const double eps = *GdpToEps(0.624, 1e-5);
  EXPECT_NEAR(*GdpToDelta(0.624, eps), 1e-5, 1e-12);
}

TEST(GdpToRdp, Formula) {
  EXPECT_DOUBLE_EQ(GdpToRdp(2.0, 3.0)->eps, 6.0);
  EXPECT_DOUBLE_EQ(GdpToRdp(1.0, 2.0)->eps, 1.0);
  EXPECT_EQ(GdpToRdp(0.0, 7.0)->eps, 0.0);
  EXPECT_FALSE(GdpToRdp(1.0, 1.0).ok());
}

TEST(RdpToEpsDelta, BelowClassicOptimum) {
  const double closed = 1.0 + 2.0 * std::sqrt(std::log(1e5));
  EXPECT_NEAR(closed, 7.786, 1e-3);
  const RdpConversion conv = *RdpToEpsDeltaDetailed(1.0, 1e-5);
  EXPECT_LE(conv.eps, closed + 1e-9);
  EXPECT_GT(conv.alpha, 1.0);
  EXPECT_GE(*RdpToEpsDelta(0.0, 1e-5), 0.0);
  double prev = 0.0;
  for (double rho = 0.01; rho < 5.0; rho *= 1.5) {
    const double e = *RdpToEpsDelta(rho, 1e-5);
    EXPECT_GT(e, prev);
    prev = e;
  }
  EXPECT_FALSE(RdpToEpsDelta(1.0, 0.0).ok());
  EXPECT_FALSE(RdpToEpsDelta(1.0, 1.0).ok());
}

TEST(CurveToDelta, GaussianAgreement) {
  for (double mu : {0.5, 1.0, 2.0}) {
    const TradeoffCurve g = *CurveOfGdp(mu);
    for (double eps : {0.0, 1.0, 2.0}) {
      const double diff = CurveToDelta(g, eps) - *GdpToDelta(mu, eps);
      EXPECT_GE(diff, -1e-6);
      EXPECT_LE(diff, 1e-6);
    }
  }
  const TradeoffCurve id = *IdentityCurve();
  EXPECT_EQ(CurveToDelta(id, 0.0), 0.0);
  EXPECT_EQ(CurveToDelta(id, 2.0), 0.0);
}

TEST(CurveToDelta, SubsampledAtZero) {
  const TradeoffCurve c = *Subsample(*CurveOfGdp(2.5), 0.25);
  const double p = 0.25;
  const double expected =
      1.0 - ((1 + p) * Phi(-1.25) + (1 - p) * Phi(1.25));
  EXPECT_NEAR(expected, 0.19718, 5e-6);
  EXPECT_NEAR(CurveToDelta(c, 0.0), expected, 1e-6);
}

TEST(CurveToEps, InvertsCurveToDelta) {
  const TradeoffCurve g = *CurveOfGdp(1.5);
  const double eps = *CurveToEps(g, 0.05);
  EXPECT_NEAR(eps, *GdpToEps(1.5, 0.05), 1e-5);
  EXPECT_NEAR(CurveToDelta(g, eps), 0.05, 1e-9);
  // Once the optimal alpha drops below the grid mesh the curve cannot
  // resolve it and the curve-space answer falls below the exact one.
  EXPECT_LT(*CurveToEps(g, 1e-3), *GdpToEps(1.5, 1e-3));
}

}  // namespace
}  // namespace fdp
