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

#ifndef FDP_CONVERSIONS_H_
#define FDP_CONVERSIONS_H_

#include "absl/status/statusor.h"
#include "fdp/tradeoff.h"

namespace fdp {

struct EpsDelta {
  double eps;
  double delta;
};

struct RdpPoint {
  double alpha;
  double eps;
};

enum class RdpFormula { kClassic, kRefined };

struct RdpConversion {
  double eps;
  double alpha;  // optimizing order
  RdpFormula formula;
};

// delta(eps) = Phi(-eps/mu + mu/2) - e^eps Phi(-eps/mu - mu/2).
absl::StatusOr<double> GdpToDelta(double mu, double eps);

// Smallest eps >= 0 with GdpToDelta(mu, eps) <= delta.
absl::StatusOr<double> GdpToEps(double mu, double delta);

// mu-GDP implies (alpha, mu^2 alpha / 2)-RDP.
absl::StatusOr<RdpPoint> GdpToRdp(double mu, double alpha);

// For a mechanism that is (alpha, rho alpha)-RDP at every order, the best of
//   eps = rho a + log(1/delta) / (a - 1)
//   eps = rho a + log(1/(delta a)) / (a - 1) + log(1 - 1/a)
// over a > 1, clamped at zero.
absl::StatusOr<RdpConversion> RdpToEpsDeltaDetailed(double rho, double delta);
absl::StatusOr<double> RdpToEpsDelta(double rho, double delta);

// delta(eps) = sup_alpha {1 - e^eps alpha - f(alpha)}; exact for the
// piecewise-linear curve since the supremum sits at a vertex.
double CurveToDelta(const TradeoffCurve& f, double eps);

// Smallest eps >= 0 with CurveToDelta(f, eps) <= delta.
absl::StatusOr<double> CurveToEps(const TradeoffCurve& f, double delta);

}  // namespace fdp

#endif  // FDP_CONVERSIONS_H_
