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

#ifndef FDP_ACCOUNTANT_H_
#define FDP_ACCOUNTANT_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "fdp/conversions.h"
#include "fdp/prv.h"

namespace fdp {

enum class AlgoKind { kGd, kCgd, kSgd };

// Description of a private optimizer run. The contraction factor is always
// derived from (eta, m, M) and never supplied directly.
struct AlgoParams {
  AlgoKind kind = AlgoKind::kGd;
  std::optional<double> eta;
  std::optional<double> sigma;
  std::optional<std::int64_t> n;
  std::optional<std::int64_t> b;
  std::optional<std::int64_t> epochs;
  std::optional<std::int64_t> steps;
  std::optional<double> L;
  std::optional<double> m;
  std::optional<double> M;
  std::optional<double> D;
  bool constrained = false;
};

const char* AlgoKindName(AlgoKind kind);
absl::StatusOr<AlgoKind> ParseAlgoKind(const std::string& name);

// Basic field checks shared by every bound.
absl::Status ValidateAlgoParams(const AlgoParams& p);

// c = max(|1 - eta m|, |1 - eta M|); requires 0 < eta < 2/M and m > 0.
absl::StatusOr<double> Contraction(const AlgoParams& p);

// Batches per epoch n / b for cyclic runs.
absl::StatusOr<std::int64_t> BatchesPerEpoch(const AlgoParams& p);

// Total steps: `steps` for GD and SGD, l * E for CGD.
absl::StatusOr<std::int64_t> TotalSteps(const AlgoParams& p);

absl::StatusOr<double> BoundGdComposition(const AlgoParams& p);
absl::StatusOr<double> BoundGdSc(const AlgoParams& p);
// Without tau: the plateau bound, valid once t >= D n / (eta L). With tau:
// L sqrt(t - tau) / (n sigma) + D / (eta sigma sqrt(t - tau)).
absl::StatusOr<double> BoundGdProj(const AlgoParams& p,
                                   std::optional<std::int64_t> tau = {});

absl::StatusOr<double> BoundCgdComposition(const AlgoParams& p);
absl::StatusOr<double> BoundCgdSc(const AlgoParams& p);
absl::StatusOr<double> BoundCgdProj(const AlgoParams& p);

absl::StatusOr<CompositeBound> BoundSgdComposition(const AlgoParams& p);
// tau = 0 yields the same bound as tau = 1.
absl::StatusOr<CompositeBound> BoundSgdSc(const AlgoParams& p,
                                          std::int64_t tau);
absl::StatusOr<CompositeBound> BoundSgdProj(const AlgoParams& p,
                                            std::int64_t tau);

// Candidate values of t - tau: a logarithmic grid over [1, t_max] with at
// most `max_candidates` entries, always containing 1 and t_max.
std::vector<std::int64_t> TauSweepCandidates(std::int64_t t_max,
                                             int max_candidates = 64);

struct TauSweepResult {
  std::vector<std::int64_t> candidates;  // t - tau values evaluated
  std::vector<DeltaRow> best;            // pointwise minimum over candidates
  std::vector<std::int64_t> argbest;     // t - tau attaining each minimum
};

// Evaluates the SGD strongly convex or constrained bound at every candidate
// and keeps the pointwise-best delta(eps).
absl::StatusOr<TauSweepResult> SweepSgdTau(const AlgoParams& p,
                                           std::span<const double> eps_list,
                                           const GridSpec& spec = {},
                                           int max_candidates = 64);

// Smallest t with rate * sqrt(t) >= mu, i.e. ceil((mu / rate)^2), at least 1.
absl::StatusOr<std::int64_t> CrossoverStep(double convergent_mu,
                                           double composition_rate);

// mu of C_p(G(mu))^t under the central limit approximation.
absl::StatusOr<double> CltSubsampled(double mu, double p, double t);

struct CltChoice {
  std::int64_t t_minus_tau;
  double mu;
  double continuous_t_minus_tau;
};

absl::StatusOr<double> CltSgdScMu(const AlgoParams& p, double t_minus_tau);
absl::StatusOr<CltChoice> CltSgdSc(const AlgoParams& p);
absl::StatusOr<double> CltSgdProjMu(const AlgoParams& p, double t_minus_tau);
absl::StatusOr<CltChoice> CltSgdProj(const AlgoParams& p);

absl::StatusOr<double> ExpMechSc(double L, double m);
absl::StatusOr<double> LmcSc(double L, double m, double eta, std::int64_t t);
absl::StatusOr<double> LmcStationarySc(double L, double m, double eta);
absl::StatusOr<double> ExpMechConvex(double L, double D,
                                     std::optional<double> eta = {});
// Root of e^{2x} = (1 - Phi(-sqrt x)) / Phi(-sqrt x).
double ExpMechPureDpThreshold();

// Result of accounting one run; serialized as the report JSON.
struct PrivacyReport {
  std::string bound;
  std::optional<double> mu;
  std::optional<CompositeBound> composite;
  std::optional<std::string> curve_ref;
  std::vector<EpsDelta> eps_at_delta;
  std::vector<DeltaRow> delta_at_eps;
  std::optional<std::int64_t> best_t_minus_tau;
};

std::string ReportToJson(const PrivacyReport& report);

}  // namespace fdp

#endif  // FDP_ACCOUNTANT_H_
