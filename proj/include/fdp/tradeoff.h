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

#ifndef FDP_TRADEOFF_H_
#define FDP_TRADEOFF_H_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace fdp {

inline constexpr int kDefaultGridSize = 10001;

// A discretized tradeoff function, linearly interpolated between grid points.
// Instances are validated on construction and immutable afterwards.
class TradeoffCurve {
 public:
  static absl::StatusOr<TradeoffCurve> Create(std::vector<double> alphas,
                                              std::vector<double> values);

  std::span<const double> alphas() const { return alphas_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return alphas_.size(); }

  // Largest gap between consecutive grid points.
  double mesh() const { return mesh_; }

  // Piecewise-linear evaluation; alpha is clamped to [0, 1].
  double Evaluate(double alpha) const;

 private:
  TradeoffCurve(std::vector<double> alphas, std::vector<double> values);

  std::vector<double> alphas_;
  std::vector<double> values_;
  double mesh_;
};

struct CurvePoint {
  double alpha;
  double value;
};

// Checks the tradeoff-function invariants: grid spans [0, 1] strictly
// increasing, values non-increasing, convex, and below 1 - alpha.
absl::Status ValidateCurve(std::span<const double> alphas,
                           std::span<const double> values);

// `grid_size` uniform points on [0, 1] plus geometric refinement toward both
// endpoints, below the first uniform step.
absl::StatusOr<std::vector<double>> MakeAlphaGrid(
    int grid_size = kDefaultGridSize);

// G(mu)(alpha) = Phi(Phi^{-1}(1 - alpha) - mu).
absl::StatusOr<double> GdpEval(double mu, double alpha);

absl::StatusOr<double> ComposeGdp(double mu1, double mu2);
absl::StatusOr<double> ComposeGdpTimes(double mu, double n);

absl::StatusOr<TradeoffCurve> IdentityCurve(int grid_size = kDefaultGridSize);
absl::StatusOr<TradeoffCurve> CurveOfGdp(double mu,
                                         int grid_size = kDefaultGridSize);

// Left-continuous inverse, re-evaluated on the input grid.
TradeoffCurve InvertCurve(const TradeoffCurve& f);

// Greatest convex non-increasing minorant of the point cloud, evaluated on
// `grid` and clipped to [0, 1 - alpha].
absl::StatusOr<TradeoffCurve> Convexify(std::span<const CurvePoint> points,
                                        std::span<const double> grid);
absl::StatusOr<TradeoffCurve> Convexify(std::span<const CurvePoint> points);

// C_p(f) = GCM(min(f_p, f_p^{-1})) with f_p = p f + (1 - p) Id.
absl::StatusOr<TradeoffCurve> Subsample(const TradeoffCurve& f, double p);

// T(N(0,1), p N(mu,1) + (1-p) N(0,1)) by scanning likelihood-ratio
// thresholds; equals p G(mu) + (1 - p) Id.
absl::StatusOr<TradeoffCurve> MixtureGaussianTradeoff(
    double p, double mu, int grid_size = kDefaultGridSize);

struct CurveComparison {
  bool holds;
  double max_violation;  // max over the grid of g - f
  double argmax_alpha;
};

// Default tolerance: 1e-9 plus one mesh width of either curve.
double DefaultComparisonTolerance(const TradeoffCurve& f,
                                  const TradeoffCurve& g);

// f >= g - tol on the union of both grids.
CurveComparison CurveGeq(const TradeoffCurve& f, const TradeoffCurve& g);
CurveComparison CurveGeq(const TradeoffCurve& f, const TradeoffCurve& g,
                         double tol);

// Serialization. CSV carries a header `alpha,f` and 17 significant digits.
void WriteCurveCsv(const TradeoffCurve& curve, std::ostream& out);
absl::StatusOr<TradeoffCurve> ReadCurveCsv(std::istream& in);
std::string CurveToJson(const TradeoffCurve& curve);
absl::StatusOr<TradeoffCurve> CurveFromJson(const std::string& text);

namespace experimental {

// T(pN(-mu,1) + (1-p)N(0,1), pN(mu,1) + (1-p)N(0,1)). Conjectured to lower
// bound C_p(G(mu)) more tightly; not used by any accountant bound.
absl::StatusOr<TradeoffCurve> ConjecturedSubsampledTradeoff(
    double p, double mu, int grid_size = kDefaultGridSize);

}  // namespace experimental
}  // namespace fdp

#endif  // FDP_TRADEOFF_H_
