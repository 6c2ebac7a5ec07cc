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

#include "fdp/tradeoff.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "fdp/kernels.h"
#include "fdp/normal.h"
#include "fdp/numeric.h"
#include "fdp/status_macros.h"

namespace fdp {
namespace {

constexpr double kInvariantTol = 1e-12;
constexpr double kFinestRefinement = 1e-14;
constexpr double kFinestUpperRefinement = 1e-12;

// Evaluates the polyline through (xs, ys) at x; xs must be sorted.
double InterpolateSorted(std::span<const double> xs, std::span<const double> ys,
                         double x) {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
  const std::size_t lo = hi - 1;
  if (x == xs[lo]) return ys[lo];
  const double w = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return ys[lo] + w * (ys[hi] - ys[lo]);
}

// Lower convex hull of points sorted by (alpha, value).
std::vector<CurvePoint> LowerHull(std::span<const CurvePoint> sorted) {
  std::vector<CurvePoint> hull;
  hull.reserve(sorted.size());
  for (const CurvePoint& p : sorted) {
    if (!hull.empty() && hull.back().alpha == p.alpha) continue;
    while (hull.size() >= 2) {
      const CurvePoint& a = hull[hull.size() - 2];
      const CurvePoint& b = hull.back();
      const double cross = (b.alpha - a.alpha) * (p.value - a.value) -
                           (b.value - a.value) * (p.alpha - a.alpha);
      if (cross > 0.0) break;
      hull.pop_back();
    }
    hull.push_back(p);
  }
  return hull;
}

void ClipToIdentity(std::span<const double> alphas, std::span<double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = std::clamp(values[i], 0.0, std::max(0.0, 1.0 - alphas[i]));
  }
}

struct GaussianMixture {
  std::vector<double> weights;
  std::vector<double> means;

  double Cdf(double z) const {
    double total = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      total += weights[i] * NormalCdf(z - means[i]);
    }
    return total;
  }
  double Sf(double z) const {
    double total = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      total += weights[i] * NormalCdf(means[i] - z);
    }
    return total;
  }
};

// T(P, Q) for mixtures whose likelihood ratio dQ/dP increases in x, so the
// optimal tests reject P when x exceeds a threshold z.
absl::StatusOr<TradeoffCurve> MonotoneLrTradeoff(const GaussianMixture& p,
                                                 const GaussianMixture& q,
                                                 int grid_size) {
  FDP_ASSIGN_OR_RETURN(std::vector<double> alphas, MakeAlphaGrid(grid_size));
  constexpr double kZRange = 60.0;
  std::vector<double> values(alphas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const double alpha = alphas[i];
    if (alpha <= 0.0) {
      values[i] = 1.0;
      continue;
    }
    if (alpha >= 1.0) {
      values[i] = 0.0;
      continue;
    }
    double z;
    if (alpha <= 0.5) {
      z = Bisect([&](double x) { return p.Sf(x) - alpha; }, -kZRange, kZRange,
                 1e-14);
    } else {
      const double complement = 1.0 - alpha;
      z = Bisect([&](double x) { return p.Cdf(x) - complement; }, -kZRange,
                 kZRange, 1e-14);
    }
    values[i] = q.Cdf(z);
  }
  ClipToIdentity(alphas, values);
  for (std::size_t i = 1; i < values.size(); ++i) {
    values[i] = std::min(values[i], values[i - 1]);
  }
  return TradeoffCurve::Create(std::move(alphas), std::move(values));
}

absl::Status CheckMu(double mu) {
  if (std::isnan(mu) || mu < 0.0) {
    return absl::InvalidArgumentError(
        absl::StrCat("mu must be nonnegative, got ", mu));
  }
  return absl::OkStatus();
}

absl::Status CheckRate(double p) {
  if (std::isnan(p) || p < 0.0 || p > 1.0) {
    return absl::InvalidArgumentError(
        absl::StrCat("subsampling rate must lie in [0, 1], got ", p));
  }
  return absl::OkStatus();
}

}  // namespace

TradeoffCurve::TradeoffCurve(std::vector<double> alphas,
                             std::vector<double> values)
    : alphas_(std::move(alphas)), values_(std::move(values)), mesh_(0.0) {
  for (std::size_t i = 1; i < alphas_.size(); ++i) {
    mesh_ = std::max(mesh_, alphas_[i] - alphas_[i - 1]);
  }
}

absl::StatusOr<TradeoffCurve> TradeoffCurve::Create(
    std::vector<double> alphas, std::vector<double> values) {
  FDP_RETURN_IF_ERROR(ValidateCurve(alphas, values));
  return TradeoffCurve(std::move(alphas), std::move(values));
}

double TradeoffCurve::Evaluate(double alpha) const {
  return InterpolateSorted(alphas_, values_, std::clamp(alpha, 0.0, 1.0));
}

absl::Status ValidateCurve(std::span<const double> alphas,
                           std::span<const double> values) {
  if (alphas.size() != values.size()) {
    return absl::InvalidArgumentError("alphas and values differ in length");
  }
  if (alphas.size() < 2) {
    return absl::InvalidArgumentError("a curve needs at least two points");
  }
  if (alphas.front() != 0.0 || alphas.back() != 1.0) {
    return absl::InvalidArgumentError("alpha grid must start at 0 and end at 1");
  }
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!std::isfinite(values[i]) || values[i] < -kInvariantTol ||
        values[i] > 1.0 + kInvariantTol) {
      return absl::InvalidArgumentError(
          absl::StrCat("value out of [0, 1] at index ", i));
    }
    if (values[i] > 1.0 - alphas[i] + kInvariantTol) {
      return absl::InvalidArgumentError(
          absl::StrCat("value exceeds 1 - alpha at alpha=", alphas[i]));
    }
    if (i == 0) continue;
    if (!(alphas[i] > alphas[i - 1])) {
      return absl::InvalidArgumentError(
          absl::StrCat("alpha grid not strictly increasing at index ", i));
    }
    if (values[i] > values[i - 1] + kInvariantTol) {
      return absl::InvalidArgumentError(
          absl::StrCat("values increase at alpha=", alphas[i]));
    }
  }
  for (std::size_t i = 1; i + 1 < alphas.size(); ++i) {
    const double left = alphas[i] - alphas[i - 1];
    const double right = alphas[i + 1] - alphas[i];
    const double chord =
        (right * values[i - 1] + left * values[i + 1]) / (left + right);
    if (values[i] > chord + kInvariantTol) {
      return absl::InvalidArgumentError(
          absl::StrCat("curve not convex at alpha=", alphas[i]));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<double>> MakeAlphaGrid(int grid_size) {
  if (grid_size < 3) {
    return absl::InvalidArgumentError(
        absl::StrCat("grid_size must be at least 3, got ", grid_size));
  }
  const int last = grid_size - 1;
  const double step = 1.0 / last;
  std::vector<double> grid;
  grid.reserve(grid_size + 64);
  for (int i = 0; i <= last; ++i) grid.push_back(static_cast<double>(i) / last);
  // Half-decade geometric refinement toward each endpoint.
  for (int k = 0;; ++k) {
    const double x = kFinestRefinement * std::pow(10.0, 0.5 * k);
    if (x >= 0.5 * step) break;
    grid.push_back(x);
    if (x >= kFinestUpperRefinement) grid.push_back(1.0 - x);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

absl::StatusOr<double> GdpEval(double mu, double alpha) {
  FDP_RETURN_IF_ERROR(CheckMu(mu));
  if (std::isnan(alpha) || alpha < 0.0 || alpha > 1.0) {
    return absl::InvalidArgumentError(
        absl::StrCat("alpha must lie in [0, 1], got ", alpha));
  }
  if (alpha == 0.0) return std::isinf(mu) ? 0.0 : 1.0;
  if (alpha == 1.0) return 0.0;
  if (mu == 0.0) return 1.0 - alpha;
  if (std::isinf(mu)) return 0.0;
  return NormalCdf(NormalUpperQuantile(alpha) - mu);
}

absl::StatusOr<double> ComposeGdp(double mu1, double mu2) {
  FDP_RETURN_IF_ERROR(CheckMu(mu1));
  FDP_RETURN_IF_ERROR(CheckMu(mu2));
  return std::hypot(mu1, mu2);
}

absl::StatusOr<double> ComposeGdpTimes(double mu, double n) {
  FDP_RETURN_IF_ERROR(CheckMu(mu));
  if (std::isnan(n) || n < 0.0) {
    return absl::InvalidArgumentError("composition count must be nonnegative");
  }
  return mu * std::sqrt(n);
}

absl::StatusOr<TradeoffCurve> IdentityCurve(int grid_size) {
  FDP_ASSIGN_OR_RETURN(std::vector<double> alphas, MakeAlphaGrid(grid_size));
  std::vector<double> values(alphas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i) values[i] = 1.0 - alphas[i];
  return TradeoffCurve::Create(std::move(alphas), std::move(values));
}

absl::StatusOr<TradeoffCurve> CurveOfGdp(double mu, int grid_size) {
  FDP_RETURN_IF_ERROR(CheckMu(mu));
  FDP_ASSIGN_OR_RETURN(std::vector<double> alphas, MakeAlphaGrid(grid_size));
  std::vector<double> values(alphas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    FDP_ASSIGN_OR_RETURN(values[i], GdpEval(mu, alphas[i]));
  }
  return TradeoffCurve::Create(std::move(alphas), std::move(values));
}

TradeoffCurve InvertCurve(const TradeoffCurve& f) {
  const auto alphas = f.alphas();
  const auto values = f.values();
  // Swapped breakpoints, ordered by the former value; equal values keep the
  // smallest alpha, which is the left-continuous choice.
  std::vector<CurvePoint> swapped;
  swapped.reserve(alphas.size() + 2);
  for (std::size_t i = alphas.size(); i-- > 0;) {
    if (!swapped.empty() && values[i] <= swapped.back().alpha) {
      swapped.back().value = alphas[i];
      continue;
    }
    swapped.push_back({values[i], alphas[i]});
  }
  if (swapped.front().alpha > 0.0) swapped.insert(swapped.begin(), {0.0, 1.0});
  if (swapped.back().alpha < 1.0) swapped.push_back({1.0, 0.0});
  std::vector<double> xs(swapped.size());
  std::vector<double> ys(swapped.size());
  for (std::size_t i = 0; i < swapped.size(); ++i) {
    xs[i] = swapped[i].alpha;
    ys[i] = swapped[i].value;
  }
  std::vector<double> grid(alphas.begin(), alphas.end());
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out[i] = InterpolateSorted(xs, ys, grid[i]);
  }
  ClipToIdentity(grid, out);
  return std::move(TradeoffCurve::Create(std::move(grid), std::move(out)))
      .value();
}

absl::StatusOr<TradeoffCurve> Convexify(std::span<const CurvePoint> points,
                                        std::span<const double> grid) {
  if (points.empty()) {
    return absl::InvalidArgumentError("convexify needs at least one point");
  }
  std::vector<CurvePoint> sorted(points.begin(), points.end());
  for (const CurvePoint& p : sorted) {
    if (!std::isfinite(p.alpha) || !std::isfinite(p.value)) {
      return absl::InvalidArgumentError("non-finite point in convexify input");
    }
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const CurvePoint& a, const CurvePoint& b) {
              return a.alpha < b.alpha ||
                     (a.alpha == b.alpha && a.value < b.value);
            });
  if (sorted.front().alpha > 0.0 || sorted.back().alpha < 1.0) {
    return absl::InvalidArgumentError("points must cover [0, 1]");
  }
  const std::vector<CurvePoint> hull = LowerHull(sorted);
  std::vector<double> xs(hull.size());
  std::vector<double> ys(hull.size());
  for (std::size_t i = 0; i < hull.size(); ++i) {
    xs[i] = hull[i].alpha;
    ys[i] = hull[i].value;
  }
  std::vector<double> alphas(grid.begin(), grid.end());
  std::vector<double> values(alphas.size());
  double running = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    running = std::min(running, InterpolateSorted(xs, ys, alphas[i]));
    values[i] = running;
  }
  ClipToIdentity(alphas, values);
  return TradeoffCurve::Create(std::move(alphas), std::move(values));
}

absl::StatusOr<TradeoffCurve> Convexify(std::span<const CurvePoint> points) {
  FDP_ASSIGN_OR_RETURN(std::vector<double> grid, MakeAlphaGrid());
  return Convexify(points, grid);
}

absl::StatusOr<TradeoffCurve> Subsample(const TradeoffCurve& f, double p) {
  FDP_RETURN_IF_ERROR(CheckRate(p));
  const auto alphas = f.alphas();
  if (p == 0.0) {
    std::vector<double> values(alphas.size());
    for (std::size_t i = 0; i < alphas.size(); ++i) values[i] = 1.0 - alphas[i];
    return TradeoffCurve::Create({alphas.begin(), alphas.end()},
                                 std::move(values));
  }
  std::vector<double> mixed(alphas.size());
  kernels::Active().mix_with_identity(alphas, f.values(), p, mixed);
  // The hull of min(f_p, f_p^{-1}) is the hull of both vertex sets.
  std::vector<CurvePoint> points;
  points.reserve(2 * alphas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    points.push_back({alphas[i], mixed[i]});
    points.push_back({mixed[i], alphas[i]});
  }
  return Convexify(points, alphas);
}

absl::StatusOr<TradeoffCurve> MixtureGaussianTradeoff(double p, double mu,
                                                      int grid_size) {
  FDP_RETURN_IF_ERROR(CheckRate(p));
  FDP_RETURN_IF_ERROR(CheckMu(mu));
  const GaussianMixture null_law{{1.0}, {0.0}};
  const GaussianMixture alt_law{{1.0 - p, p}, {0.0, mu}};
  return MonotoneLrTradeoff(null_law, alt_law, grid_size);
}

double DefaultComparisonTolerance(const TradeoffCurve& f,
                                  const TradeoffCurve& g) {
  return 1e-9 + std::max(f.mesh(), g.mesh());
}

CurveComparison CurveGeq(const TradeoffCurve& f, const TradeoffCurve& g) {
  return CurveGeq(f, g, DefaultComparisonTolerance(f, g));
}

CurveComparison CurveGeq(const TradeoffCurve& f, const TradeoffCurve& g,
                         double tol) {
  std::vector<double> grid;
  grid.reserve(f.size() + g.size());
  std::merge(f.alphas().begin(), f.alphas().end(), g.alphas().begin(),
             g.alphas().end(), std::back_inserter(grid));
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  std::vector<double> fv(grid.size());
  std::vector<double> gv(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    fv[i] = f.Evaluate(grid[i]);
    gv[i] = g.Evaluate(grid[i]);
  }
  const double worst = kernels::Active().max_violation(fv, gv);
  double argmax = grid.front();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (gv[i] - fv[i] == worst) {
      argmax = grid[i];
      break;
    }
  }
  return {worst <= tol, worst, argmax};
}

namespace experimental {

absl::StatusOr<TradeoffCurve> ConjecturedSubsampledTradeoff(double p,
                                                            double mu,
                                                            int grid_size) {
  FDP_RETURN_IF_ERROR(CheckRate(p));
  FDP_RETURN_IF_ERROR(CheckMu(mu));
  const GaussianMixture left{{1.0 - p, p}, {0.0, -mu}};
  const GaussianMixture right{{1.0 - p, p}, {0.0, mu}};
  return MonotoneLrTradeoff(left, right, grid_size);
}

}  // namespace experimental
}  // namespace fdp
