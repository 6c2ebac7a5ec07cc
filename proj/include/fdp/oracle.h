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

// Independent checks for the accountant: closed-form worst-case Gaussian
// pairs, Monte-Carlo simulation of the noisy optimizers on quadratic losses,
// empirical tradeoff estimation and a brute-force schedule optimizer.
//
// Empirical curves are estimates with a confidence band, never certified
// bounds. The band is two-sided in both coordinates: with probability at
// least 99% the true curve passes within `ci_halfwidth` of every estimated
// point in each of alpha and beta.

#ifndef FDP_ORACLE_H_
#define FDP_ORACLE_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "fdp/tradeoff.h"

namespace fdp {

// mu of the terminal iterates of the worst-case strongly convex pair:
// mean (1 - c^t)/(1 - c) s over standard deviation
// sigma sqrt((1 - c^{2t})/(1 - c^2)).
absl::StatusOr<double> WorstCaseGdScMu(double c, double s, double sigma,
                                       std::int64_t t);

enum class SimKind { kGd, kCgd, kSgd };

// Noisy gradient descent on f_i(x) = (m/2)|x|^2, where the neighbouring
// dataset replaces f_{index} by (m/2)|x|^2 - L <v, x>, v = e_1:
//   x <- Proj((1 - eta m) x + eta (L/batch) v [index in batch] + eta sigma Z).
// The projection clamps to [-radius, radius] and needs dimension 1.
struct SimSpec {
  SimKind kind = SimKind::kGd;
  int dimension = 1;
  double eta = 0.1;
  double m = 1.0;
  double L = 1.0;
  double sigma = 1.0;
  std::int64_t n = 1;
  std::int64_t b = 1;
  std::int64_t steps = 1;
  std::int64_t index = 0;
  std::optional<double> radius;
  double x0 = 0.0;
  std::int64_t trials = 1000;
  std::uint64_t seed = 0;
  // Trials are split into this many chunks with derived seeds, so results
  // do not depend on the thread count.
  int chunks = 64;
  // Share the noise (and batch draws) between the two processes of a trial.
  bool coupled = false;
};

absl::Status ValidateSimSpec(const SimSpec& spec);

// Terminal iterates, row-major trials x dimension.
struct SimSamples {
  int dimension = 1;
  std::vector<double> p;  // original dataset
  std::vector<double> q;  // neighbouring dataset
  std::int64_t trials() const {
    return static_cast<std::int64_t>(p.size()) / dimension;
  }
};

absl::StatusOr<SimSamples> Simulate(const SimSpec& spec);

// Rows "trial,x_final,process" with the first coordinate as x_final.
void WriteSimCsv(const SimSamples& samples, std::ostream& out);

enum class EmpiricalMethod { kExactLr, kHistogramLr };

struct EmpiricalCurve {
  TradeoffCurve curve;
  double ci_halfwidth;
  EmpiricalMethod method;
};

struct EmpiricalOptions {
  EmpiricalMethod method = EmpiricalMethod::kExactLr;
  // Test statistic, monotone in the likelihood ratio dQ/dP. Defaults to the
  // first coordinate, which is exact for Gaussian shifts along e_1 and for
  // mixtures of nonnegative shifts.
  std::function<double(std::span<const double>)> statistic;
  // Zero picks the Freedman-Diaconis count, floored at 64.
  int bins = 0;
  double confidence = 0.99;
};

// Estimates T(P, Q) from samples of P and Q.
absl::StatusOr<EmpiricalCurve> EmpiricalTradeoff(
    std::span<const double> p_samples, std::span<const double> q_samples,
    int dimension, const EmpiricalOptions& options = {});

// Curve CSV with an extra constant `ci` column.
void WriteEmpiricalCsv(const EmpiricalCurve& curve, std::ostream& out);

std::vector<double> CheckAlphas();  // 0.05, 0.10, ..., 0.95

struct BandCheck {
  bool holds;
  double margin;        // worst slack; negative when violated
  double worst_alpha;
};

// Estimate lies within the two-axis band around the reference curve.
BandCheck CheckWithinBand(const EmpiricalCurve& est,
                          const std::function<double(double)>& reference,
                          std::span<const double> alphas);
// Estimate is not below the reference by more than the band allows, i.e. the
// reference is a valid lower bound as far as the data can tell.
BandCheck CheckAboveBand(const EmpiricalCurve& est,
                         const std::function<double(double)>& reference,
                         std::span<const double> alphas);

// Law of a bounded 1-D shift W.
using ShiftLaw = std::function<double(std::mt19937_64&)>;

ShiftLaw PointMassLaw(double s);
ShiftLaw UniformLaw(double s);
// Random discrete law on [-s, s] with up to 8 atoms drawn from `rng`.
ShiftLaw RandomDiscreteLaw(double s, std::mt19937_64& rng);

struct GdpInfCheck {
  bool passed;
  double margin;  // band-adjusted slack above G(s/sigma), >= 0 on pass
  double gap;     // raw min over check alphas of estimate - G(s/sigma)
  double ci;
};

// Empirical T(W + sigma Z, sigma Z) against G(s / sigma).
absl::StatusOr<GdpInfCheck> CheckGdpInf(double s, double sigma,
                                        const ShiftLaw& law, std::int64_t n,
                                        std::uint64_t seed);

struct BruteForceResult {
  double sum_sq;
  std::vector<double> lambdas;
};

// Minimizes sum a_k^2 over lambda in [0,1]^t for the recursion started at
// z0, by multi-start coordinate descent. With `terminal_zero` the last
// lambda is pinned to 1. Requires 1 <= t <= 12.
absl::StatusOr<BruteForceResult> BruteForceSchedule(
    double c, std::span<const double> s_seq, double z0 = 0.0,
    bool terminal_zero = true, int restarts = 200, std::uint64_t seed = 0);

}  // namespace fdp

#endif  // FDP_ORACLE_H_
