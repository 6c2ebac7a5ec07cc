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

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "fdp/kernels.h"
#include "fdp/normal.h"
#include "fdp/numeric.h"
#include "fdp/status_macros.h"

namespace fdp {
namespace {

constexpr double kLogOrderLo = -12.0;
constexpr double kLogOrderHi = 12.0;
constexpr double kEpsCeiling = 1e4;

absl::Status CheckDelta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must lie in (0, 1), got ", delta));
  }
  return absl::OkStatus();
}

// Smallest eps >= 0 where a non-increasing delta(eps) drops to `delta`.
double InvertDeltaCurve(const std::function<double(double)>& delta_of,
                        double delta) {
  if (delta_of(0.0) <= delta) return 0.0;
  double hi = 1.0;
  while (delta_of(hi) > delta && hi < kEpsCeiling) hi *= 2.0;
  return Bisect([&](double e) { return delta_of(e) - delta; }, 0.0, hi,
                1e-15 * hi);
}

}  // namespace

absl::StatusOr<double> GdpToDelta(double mu, double eps) {
  if (std::isnan(mu) || mu < 0.0) {
    return absl::InvalidArgumentError(
        absl::StrCat("mu must be nonnegative, got ", mu));
  }
  if (std::isnan(eps) || eps < 0.0) {
    return absl::InvalidArgumentError(
        absl::StrCat("eps must be nonnegative, got ", eps));
  }
  if (mu == 0.0) return 0.0;
  if (std::isinf(mu)) return 1.0;
  const double first = NormalCdf(-eps / mu + 0.5 * mu);
  const double second =
      std::exp(eps + LogNormalCdf(-eps / mu - 0.5 * mu));
  return std::clamp(first - second, 0.0, 1.0);
}

absl::StatusOr<double> GdpToEps(double mu, double delta) {
  FDP_RETURN_IF_ERROR(CheckDelta(delta));
  FDP_ASSIGN_OR_RETURN(const double at_zero, GdpToDelta(mu, 0.0));
  if (delta >= at_zero) return 0.0;
  return InvertDeltaCurve(
      [mu](double e) { return GdpToDelta(mu, e).value(); }, delta);
}

absl::StatusOr<RdpPoint> GdpToRdp(double mu, double alpha) {
  if (std::isnan(mu) || mu < 0.0) {
    return absl::InvalidArgumentError("mu must be nonnegative");
  }
  if (!(alpha > 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Renyi order must exceed 1, got ", alpha));
  }
  return RdpPoint{alpha, 0.5 * mu * mu * alpha};
}

absl::StatusOr<RdpConversion> RdpToEpsDeltaDetailed(double rho,
                                                    double delta) {
  FDP_RETURN_IF_ERROR(CheckDelta(delta));
  if (std::isnan(rho) || rho < 0.0) {
    return absl::InvalidArgumentError(
        absl::StrCat("rho must be nonnegative, got ", rho));
  }
  const double log_inv_delta = -std::log(delta);
  auto classic = [&](double u) {
    const double am1 = std::exp(u);
    return rho * (1.0 + am1) + log_inv_delta / am1;
  };
  auto refined = [&](double u) {
    const double am1 = std::exp(u);
    const double alpha = 1.0 + am1;
    return rho * alpha + (log_inv_delta - std::log(alpha)) / am1 +
           std::log(am1 / alpha);
  };
  const ScalarMinimum best_classic =
      GoldenSectionMinimize(classic, kLogOrderLo, kLogOrderHi);
  const ScalarMinimum best_refined =
      GoldenSectionMinimize(refined, kLogOrderLo, kLogOrderHi);
  RdpConversion out{best_classic.value, 1.0 + std::exp(best_classic.x),
                    RdpFormula::kClassic};
  if (best_refined.value < out.eps) {
    out = {best_refined.value, 1.0 + std::exp(best_refined.x),
           RdpFormula::kRefined};
  }
  out.eps = std::max(out.eps, 0.0);
  return out;
}

absl::StatusOr<double> RdpToEpsDelta(double rho, double delta) {
  FDP_ASSIGN_OR_RETURN(const RdpConversion conv,
                       RdpToEpsDeltaDetailed(rho, delta));
  return conv.eps;
}

double CurveToDelta(const TradeoffCurve& f, double eps) {
  const double gap = kernels::Active().max_hockey_gap(f.alphas(), f.values(),
                                                      std::exp(eps));
  return std::clamp(gap, 0.0, 1.0);
}

absl::StatusOr<double> CurveToEps(const TradeoffCurve& f, double delta) {
  FDP_RETURN_IF_ERROR(CheckDelta(delta));
  return InvertDeltaCurve([&f](double e) { return CurveToDelta(f, e); },
                          delta);
}

}  // namespace fdp
