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

#include "fdp/prv.h"

#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "fdp/conversions.h"
#include "fdp/tradeoff.h"
#include "gtest/gtest.h"

namespace fdp {
namespace {

double Phi(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

TEST(PrvOfGdp, MomentsAndDelta) {
  const PrvGrid pm = *PrvOfGdp(0.0);
  EXPECT_NEAR(PrvDeltaAt(pm, 0.0).delta, 0.0, 1e-15);
  const GridSpec spec;
  for (double mu : {0.5, 1.0, 2.0}) {
    const PrvGrid prv = *PrvOfGdp(mu, spec);
    EXPECT_NEAR(prv.Mean(), mu * mu / 2.0, spec.mesh);
    EXPECT_NEAR(prv.Variance(), mu * mu, 1e-3);
    EXPECT_NEAR(prv.TotalMass() + prv.tail_mass, 1.0, 1e-9);
  }
  const PrvGrid one = *PrvOfGdp(1.0);
  for (double eps : {0.0, 1.0, 2.0}) {
    EXPECT_NEAR(PrvDeltaAt(one, eps).delta, *GdpToDelta(1.0, eps), 1e-5);
  }
  EXPECT_NEAR(PrvDeltaAt(one, 0.0).delta, 0.38292, 1e-5);
}

TEST(PrvOfGdp, RejectsCoarseGrid) {
  GridSpec coarse;
  coarse.mesh = 0.1;
  EXPECT_EQ(PrvOfGdp(0.5, coarse).status().code(),
            absl::StatusCode::kFailedPrecondition);
  EXPECT_FALSE(PrvOfGdp(-1.0).ok());
}

TEST(PrvDeltaAt, MonotoneAndTail) {
  const PrvGrid prv = *PrvOfGdp(1.5);
  double prev = 1.0;
  for (double eps = -3.0; eps <= 10.0; eps += 0.1) {
    const double d = PrvDeltaAt(prv, eps).delta;
    EXPECT_LE(d, prev + 1e-15);
    prev = d;
  }
  EXPECT_LE(PrvDeltaAt(prv, prv.hi() + 1.0).delta, prv.tail_mass + 1e-300);
}

TEST(SubsampledGdpLoss, SymmetryOfLossLaws) {
  // For the pair (P, Q) of a symmetric tradeoff, dY(t) = e^t dY(-t): checked
  // on cell masses around +-t.
  const double mu = 1.3, p = 0.2, h = 1e-3;
  for (double t : {0.05, 0.4, 1.1}) {
    const double right = SubsampledGdpLossCdf(mu, p, t + h / 2) -
                         SubsampledGdpLossCdf(mu, p, t - h / 2);
    const double left = SubsampledGdpLossCdf(mu, p, -t + h / 2) -
                        SubsampledGdpLossCdf(mu, p, -t - h / 2);
    EXPECT_NEAR(right / left, std::exp(t), 1e-3 * std::exp(t)) << t;
  }
  for (double t : {-2.0, 0.5, 3.0}) {
    EXPECT_NEAR(SubsampledGdpLossCdf(mu, p, t) + SubsampledGdpLossSf(mu, p, t),
                1.0, 1e-12);
  }
}

TEST(PrvOfSubsampledGdp, MassAndRateOneLimit) {
  const PrvGrid prv = *PrvOfSubsampledGdp(1.0, 0.1);
  EXPECT_NEAR(prv.TotalMass() + prv.tail_mass, 1.0, 1e-9);
  const PrvGrid full = *PrvOfSubsampledGdp(1.0, 1.0);
  for (double eps : {0.0, 0.5, 1.0}) {
    EXPECT_NEAR(PrvDeltaAt(full, eps).delta, *GdpToDelta(1.0, eps), 1e-5);
  }
  const PrvGrid zero = *PrvOfSubsampledGdp(1.0, 0.0);
  EXPECT_NEAR(PrvDeltaAt(zero, 0.0).delta, 0.0, 1e-15);
}

TEST(PrvOfSubsampledGdp, MatchesCurveSpace) {
  const PrvGrid prv = *PrvOfSubsampledGdp(1.0, 0.1);
  const TradeoffCurve c = *Subsample(*CurveOfGdp(1.0), 0.1);
  for (double eps : {0.0, 0.5, 1.0}) {
    EXPECT_NEAR(PrvDeltaAt(prv, eps).delta, CurveToDelta(c, eps), 1e-4) << eps;
  }
}

TEST(SelfCompose, GaussianClosure) {
  const PrvGrid one = *PrvOfGdp(1.0);
  const PrvGrid same = *SelfCompose(one, 1);
  EXPECT_EQ(same.pmf.size(), one.pmf.size());
  const PrvGrid four = *SelfCompose(one, 4);
  EXPECT_NEAR(Phi(0.5) - std::exp(1.0) * Phi(-1.5), 0.50986, 1e-5);
  EXPECT_NEAR(PrvDeltaAt(four, 1.0).delta, *GdpToDelta(2.0, 1.0), 1e-4);
  EXPECT_NEAR(four.Mean(), 4.0 * one.Mean(), 4.0 * one.mesh);
  EXPECT_FALSE(SelfCompose(one, 0).ok());
}

TEST(SelfCompose, LargeCountUsesWindow) {
  const PrvGrid sub = *PrvOfSubsampledGdp(1.0, 0.05);
  const PrvGrid many = *SelfCompose(sub, 400);
  EXPECT_NEAR(many.TotalMass() + many.tail_mass, 1.0, 1e-8);
  EXPECT_NEAR(many.Mean(), 400.0 * sub.Mean(), 400.0 * sub.mesh);
}

TEST(Convolve, IdentityCommutativityClosure) {
  const PrvGrid a = *PrvOfGdp(3.0);
  const PrvGrid b = *PrvOfGdp(4.0);
  const PrvGrid id = PointMassPrv(a.mesh);
  const PrvGrid ai = *Convolve(a, id);
  for (double eps : {0.0, 1.0, 4.0}) {
    EXPECT_NEAR(PrvDeltaAt(ai, eps).delta, PrvDeltaAt(a, eps).delta, 1e-12);
  }
  const PrvGrid ab = *Convolve(a, b);
  const PrvGrid ba = *Convolve(b, a);
  for (double eps : {0.0, 1.0, 2.0, 5.0}) {
    EXPECT_NEAR(PrvDeltaAt(ab, eps).delta, PrvDeltaAt(ba, eps).delta, 1e-12);
    EXPECT_NEAR(PrvDeltaAt(ab, eps).delta, *GdpToDelta(5.0, eps), 1e-4);
  }
}

TEST(EvaluateComposite, Basics) {
  const std::vector<double> eps = {0.0, 0.5, 1.0, 2.0, 4.0};
  const auto empty = *EvaluateComposite(CompositeBound{}, eps);
  for (const DeltaRow& r : empty) EXPECT_NEAR(r.delta, 0.0, 1e-15);
  const auto single = *EvaluateComposite(CompositeBound{{GdpFactor{1.2}}}, eps);
  for (const DeltaRow& r : single) {
    EXPECT_NEAR(r.delta, *GdpToDelta(1.2, r.eps), 1e-5);
  }
  const CompositeBound mixed{{GdpFactor{0.3}, GdpFactor{0.004},
                              SubsampledGdpFactor{1.0, 0.1, 30}}};
  const auto rows = *EvaluateComposite(mixed, eps);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_LE(rows[i].delta, rows[i - 1].delta);
  }
  // Convex in eps on the evenly spaced prefix.
  EXPECT_LE(rows[1].delta, 0.5 * (rows[0].delta + rows[2].delta) + 1e-12);
  EXPECT_FALSE(EvaluateComposite(
                   CompositeBound{{SubsampledGdpFactor{1.0, 1.5, 1}}}, eps)
                   .ok());
}

TEST(EvaluateComposite, MeshHalvingStability) {
  const CompositeBound cb{{SubsampledGdpFactor{1.0, 0.05, 200}}};
  const std::vector<double> eps = {0.25, 0.5, 1.0};
  GridSpec coarse;
  coarse.mesh = 2e-3;
  GridSpec fine;
  fine.mesh = 1e-3;
  const auto a = *EvaluateComposite(cb, eps, coarse);
  const auto b = *EvaluateComposite(cb, eps, fine);
  for (std::size_t i = 0; i < eps.size(); ++i) {
    EXPECT_LE(std::abs(a[i].delta - b[i].delta),
              4.0 * a[i].uncertainty + 1e-9) << eps[i];
  }
}

TEST(PrvEpsAt, InvertsDelta) {
  const PrvGrid prv = *PrvOfGdp(1.0);
  const double eps = *PrvEpsAt(prv, 1e-3);
  EXPECT_NEAR(eps, *GdpToEps(1.0, 1e-3), 2e-3);
}

TEST(DeltaCsv, Header) {
  std::ostringstream os;
  const std::vector<DeltaRow> rows = {{0.0, 0.5, 1e-6}};
  WriteDeltaCsv(rows, os);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "eps,delta,uncertainty");
}

}  // namespace
}  // namespace fdp
