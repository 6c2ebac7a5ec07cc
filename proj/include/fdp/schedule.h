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

#ifndef FDP_SCHEDULE_H_
#define FDP_SCHEDULE_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace fdp {

// Shifted-interpolation schedule over steps tau+1..t. Per-step vectors are
// indexed by k - tau - 1; `z` is indexed by k - tau and starts at z_tau.
//   z_{k+1} = (1 - lambda_{k+1}) (c z_k + s_{k+1})
//   a_{k+1} = lambda_{k+1} (c z_k + s_{k+1})
struct ShiftSchedule {
  std::int64_t tau = 0;
  std::int64_t t = 0;
  double c = 0.0;
  std::vector<double> lambdas;
  std::vector<double> a;
  std::vector<double> z;
  std::vector<double> s_seq;

  std::int64_t steps() const { return t - tau; }
  double terminal_z() const { return z.back(); }
};

struct ScheduleResult {
  ShiftSchedule schedule;
  double sum_sq;
};

struct ProjScheduleResult {
  ShiftSchedule schedule;
  double sum_sq;
  // Continuous minimizer of (s + D/x)^2 x over x = t - tau.
  double continuous_minimizer;
};

// Feasibility slack for z_k >= 0 and the terminal zero, relative to the
// largest sensitivity.
inline constexpr double kScheduleFeasibilityTol = 1e-10;

absl::StatusOr<ShiftSchedule> RecurseSchedule(double c,
                                              std::span<const double> s_seq,
                                              std::span<const double> lambdas,
                                              double z_tau,
                                              std::int64_t tau = 0);

// Checks the recursion, sign constraints and, when requested, z_t = 0.
absl::Status ValidateSchedule(const ShiftSchedule& schedule,
                              bool require_terminal_zero);

absl::StatusOr<ScheduleResult> OptimalScSchedule(double c, double s,
                                                 std::int64_t t);

absl::StatusOr<ProjScheduleResult> OptimalProjSchedule(double s, double D,
                                                       std::int64_t t,
                                                       std::int64_t tau);

// Cyclic batches, strongly convex. The differing batch is j_star in [1, l];
// the horizon is l (E - 1) + j_star - 1 steps, holding E - 1 sensitive steps.
absl::StatusOr<ScheduleResult> CgdScSchedule(double c, double s,
                                             std::int64_t l, std::int64_t E,
                                             std::int64_t j_star);

// Cyclic batches, constrained. Starts at step j_star + l (tau - 1) - 1 with
// z = D and runs l (E - tau) steps, E - tau of them sensitive.
absl::StatusOr<ScheduleResult> CgdProjSchedule(double s, double D,
                                               std::int64_t l, std::int64_t E,
                                               std::int64_t tau,
                                               std::int64_t j_star);

// mu = sqrt(sum a_k^2) / sigma.
absl::StatusOr<double> MetaMu(const ShiftSchedule& schedule, double sigma);

double SumOfSquares(const ShiftSchedule& schedule);

void WriteScheduleCsv(const ShiftSchedule& schedule, std::ostream& out);

}  // namespace fdp

#endif  // FDP_SCHEDULE_H_
