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

#include "fdp/schedule.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "fdp/kernels.h"
#include "fdp/status_macros.h"

namespace fdp {
namespace {

double Scale(const ShiftSchedule& schedule) {
  double scale = schedule.z.empty() ? 0.0 : std::abs(schedule.z.front());
  for (double s : schedule.s_seq) scale = std::max(scale, std::abs(s));
  return scale > 0.0 ? scale : 1.0;
}

// lambda = a / (c z + s), with 0/0 read as 0.
double LambdaFromShift(double a, double base) {
  if (base <= 0.0) return 0.0;
  return std::clamp(a / base, 0.0, 1.0);
}

// Fills lambdas and z from prescribed shifts a_k by z_{k+1} = c z_k + s - a.
ShiftSchedule FromShifts(double c, std::vector<double> s_seq,
                         std::vector<double> a, double z_tau, std::int64_t tau) {
  ShiftSchedule schedule;
  schedule.tau = tau;
  schedule.t = tau + static_cast<std::int64_t>(a.size());
  schedule.c = c;
  schedule.z.assign(a.size() + 1, 0.0);
  schedule.lambdas.assign(a.size(), 0.0);
  schedule.z[0] = z_tau;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double base = c * schedule.z[i] + s_seq[i];
    schedule.lambdas[i] = LambdaFromShift(a[i], base);
    schedule.z[i + 1] = base - a[i];
  }
  schedule.a = std::move(a);
  schedule.s_seq = std::move(s_seq);
  if (!schedule.a.empty()) {
    // The closed forms end exactly at zero; absorb round-off.
    const double tol = kScheduleFeasibilityTol * Scale(schedule);
    if (std::abs(schedule.z.back()) <= tol) schedule.z.back() = 0.0;
  }
  return schedule;
}

absl::Status CheckContraction(double c) {
  if (!(c > 0.0 && c < 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "contraction factor must lie in (0, 1), got ", c,
        "; use the constrained schedule when c >= 1"));
  }
  return absl::OkStatus();
}

absl::Status CheckPositive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    return absl::InvalidArgumentError(
        absl::StrCat(name, " must be positive and finite, got ", x));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<ShiftSchedule> RecurseSchedule(double c,
                                              std::span<const double> s_seq,
                                              std::span<const double> lambdas,
                                              double z_tau, std::int64_t tau) {
  if (!(c >= 0.0) || !std::isfinite(c)) {
    return absl::InvalidArgumentError("c must be nonnegative");
  }
  if (!(z_tau >= 0.0) || !std::isfinite(z_tau)) {
    return absl::InvalidArgumentError("z_tau must be nonnegative");
  }
  if (tau < 0) return absl::InvalidArgumentError("tau must be nonnegative");
  if (s_seq.size() != lambdas.size()) {
    return absl::InvalidArgumentError(
        "sensitivity and lambda sequences differ in length");
  }
  ShiftSchedule schedule;
  schedule.tau = tau;
  schedule.t = tau + static_cast<std::int64_t>(lambdas.size());
  schedule.c = c;
  schedule.s_seq.assign(s_seq.begin(), s_seq.end());
  schedule.lambdas.assign(lambdas.begin(), lambdas.end());
  schedule.a.resize(lambdas.size());
  schedule.z.resize(lambdas.size() + 1);
  schedule.z[0] = z_tau;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const double lambda = lambdas[i];
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("lambda at step ", tau + 1 + static_cast<std::int64_t>(i),
                       " outside [0, 1]: ", lambda));
    }
    if (!(s_seq[i] >= 0.0) || !std::isfinite(s_seq[i])) {
      return absl::InvalidArgumentError("sensitivities must be nonnegative");
    }
    const double base = c * schedule.z[i] + s_seq[i];
    schedule.a[i] = lambda * base;
    schedule.z[i + 1] = (1.0 - lambda) * base;
  }
  return schedule;
}

absl::Status ValidateSchedule(const ShiftSchedule& schedule,
                              bool require_terminal_zero) {
  const std::size_t n = schedule.lambdas.size();
  if (schedule.a.size() != n || schedule.s_seq.size() != n ||
      schedule.z.size() != n + 1 || schedule.t - schedule.tau !=
                                        static_cast<std::int64_t>(n)) {
    return absl::InvalidArgumentError("schedule vectors have inconsistent sizes");
  }
  const double tol = kScheduleFeasibilityTol * Scale(schedule);
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t k = schedule.tau + 1 + static_cast<std::int64_t>(i);
    const double lambda = schedule.lambdas[i];
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
      return absl::FailedPreconditionError(
          absl::StrCat("lambda outside [0, 1] at step ", k));
    }
    if (schedule.a[i] < -tol || schedule.z[i + 1] < -tol) {
      return absl::FailedPreconditionError(
          absl::StrCat("negative shift or residual at step ", k));
    }
    const double base = schedule.c * schedule.z[i] + schedule.s_seq[i];
    if (std::abs(schedule.a[i] - lambda * base) > tol ||
        std::abs(schedule.z[i + 1] - (1.0 - lambda) * base) > tol) {
      return absl::FailedPreconditionError(
          absl::StrCat("recursion violated at step ", k));
    }
  }
  if (require_terminal_zero && std::abs(schedule.z.back()) > tol) {
    return absl::FailedPreconditionError(absl::StrCat(
        "terminal residual is ", schedule.z.back(), ", expected 0"));
  }
  return absl::OkStatus();
}

absl::StatusOr<ScheduleResult> OptimalScSchedule(double c, double s,
                                                 std::int64_t t) {
  FDP_RETURN_IF_ERROR(CheckContraction(c));
  FDP_RETURN_IF_ERROR(CheckPositive(s, "s"));
  if (t < 1) return absl::InvalidArgumentError("t must be at least 1");
  const double ct = std::pow(c, static_cast<double>(t));
  ShiftSchedule schedule;
  schedule.tau = 0;
  schedule.t = t;
  schedule.c = c;
  schedule.s_seq.assign(t, s);
  schedule.a.resize(t);
  schedule.lambdas.resize(t);
  schedule.z.resize(t + 1);
  for (std::int64_t k = 0; k <= t; ++k) {
    const double ck = std::pow(c, static_cast<double>(k));
    const double ctk = std::pow(c, static_cast<double>(t - k));
    schedule.z[k] = (1.0 - ck) * (1.0 - ctk) * s / ((1.0 + ct) * (1.0 - c));
  }
  for (std::int64_t k = 1; k <= t; ++k) {
    const double a =
        std::pow(c, static_cast<double>(t - k)) * (1.0 + c) * s / (1.0 + ct);
    schedule.a[k - 1] = a;
    schedule.lambdas[k - 1] = LambdaFromShift(a, c * schedule.z[k - 1] + s);
  }
  schedule.lambdas.back() = 1.0;
  FDP_RETURN_IF_ERROR(ValidateSchedule(schedule, true));
  const double sum_sq = (1.0 - ct) / (1.0 + ct) * (1.0 + c) / (1.0 - c) * s * s;
  return ScheduleResult{std::move(schedule), sum_sq};
}

absl::StatusOr<ProjScheduleResult> OptimalProjSchedule(double s, double D,
                                                       std::int64_t t,
                                                       std::int64_t tau) {
  FDP_RETURN_IF_ERROR(CheckPositive(s, "s"));
  if (!(D >= 0.0) || !std::isfinite(D)) {
    return absl::InvalidArgumentError("diameter D must be finite and >= 0");
  }
  if (tau < 0 || tau >= t) {
    return absl::InvalidArgumentError(
        absl::StrCat("need 0 <= tau < t, got tau=", tau, " t=", t));
  }
  const std::int64_t steps = t - tau;
  const double a = s + D / static_cast<double>(steps);
  ShiftSchedule schedule = FromShifts(1.0, std::vector<double>(steps, s),
                                      std::vector<double>(steps, a), D, tau);
  FDP_RETURN_IF_ERROR(ValidateSchedule(schedule, true));
  return ProjScheduleResult{std::move(schedule),
                            a * a * static_cast<double>(steps), D / s};
}

absl::StatusOr<ScheduleResult> CgdScSchedule(double c, double s,
                                             std::int64_t l, std::int64_t E,
                                             std::int64_t j_star) {
  FDP_RETURN_IF_ERROR(CheckContraction(c));
  FDP_RETURN_IF_ERROR(CheckPositive(s, "s"));
  if (l < 1 || E < 1) {
    return absl::InvalidArgumentError("need l >= 1 and E >= 1");
  }
  if (j_star < 1 || j_star > l) {
    return absl::InvalidArgumentError(
        absl::StrCat("j_star must lie in [1, l], got ", j_star));
  }
  const std::int64_t t = l * E;
  const std::int64_t horizon = l * (E - 1) + j_star - 1;
  const double cl = std::pow(c, static_cast<double>(l));
  const double ctl = std::pow(c, static_cast<double>(t - l));
  const double coef = (1.0 - c * c) / ((1.0 - cl) * (1.0 + ctl)) * s;
  std::vector<double> s_seq(horizon, 0.0);
  std::vector<double> a(horizon, 0.0);
  for (std::int64_t k = 1; k <= horizon; ++k) {
    if ((k - j_star) % l == 0 && k >= j_star) s_seq[k - 1] = s;
    if (k >= j_star) {
      a[k - 1] = std::pow(c, static_cast<double>(t - k + j_star - 2)) * coef;
    }
  }
  ShiftSchedule schedule =
      FromShifts(c, std::move(s_seq), std::move(a), 0.0, 0);
  FDP_RETURN_IF_ERROR(ValidateSchedule(schedule, true));
  const double sum_sq = std::pow(c, 2.0 * static_cast<double>(l - 1)) *
                        (1.0 - c * c) / ((1.0 - cl) * (1.0 - cl)) *
                        (1.0 - ctl) / (1.0 + ctl) * s * s;
  return ScheduleResult{std::move(schedule), sum_sq};
}

absl::StatusOr<ScheduleResult> CgdProjSchedule(double s, double D,
                                               std::int64_t l, std::int64_t E,
                                               std::int64_t tau,
                                               std::int64_t j_star) {
  FDP_RETURN_IF_ERROR(CheckPositive(s, "s"));
  if (!(D >= 0.0) || !std::isfinite(D)) {
    return absl::InvalidArgumentError("diameter D must be finite and >= 0");
  }
  if (l < 1 || E < 1) {
    return absl::InvalidArgumentError("need l >= 1 and E >= 1");
  }
  if (j_star < 1 || j_star > l) {
    return absl::InvalidArgumentError(
        absl::StrCat("j_star must lie in [1, l], got ", j_star));
  }
  if (tau < 1 || tau >= E) {
    return absl::InvalidArgumentError(
        absl::StrCat("need 1 <= tau < E, got tau=", tau, " E=", E));
  }
  const std::int64_t start = j_star + l * (tau - 1) - 1;
  const std::int64_t remaining = E - tau;
  const std::int64_t steps = l * remaining;
  const double a = (D + s * static_cast<double>(remaining)) /
                   static_cast<double>(steps);
  std::vector<double> s_seq(steps, 0.0);
  for (std::int64_t i = 0; i < steps; ++i) {
    const std::int64_t k = start + 1 + i;
    if (k >= j_star && (k - j_star) % l == 0) s_seq[i] = s;
  }
  ShiftSchedule schedule = FromShifts(1.0, std::move(s_seq),
                                      std::vector<double>(steps, a), D, start);
  FDP_RETURN_IF_ERROR(ValidateSchedule(schedule, true));
  return ScheduleResult{std::move(schedule),
                        a * a * static_cast<double>(steps)};
}

double SumOfSquares(const ShiftSchedule& schedule) {
  return kernels::Active().dot(schedule.a, schedule.a);
}

absl::StatusOr<double> MetaMu(const ShiftSchedule& schedule, double sigma) {
  if (!(sigma > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("sigma must be positive, got ", sigma));
  }
  return std::sqrt(SumOfSquares(schedule)) / sigma;
}

void WriteScheduleCsv(const ShiftSchedule& schedule, std::ostream& out) {
  out << "k,lambda,a,z\n";
  char line[128];
  for (std::size_t i = 0; i < schedule.a.size(); ++i) {
    std::snprintf(line, sizeof(line), "%lld,%.17g,%.17g,%.17g\n",
                  static_cast<long long>(schedule.tau + 1 +
                                         static_cast<std::int64_t>(i)),
                  schedule.lambdas[i], schedule.a[i], schedule.z[i + 1]);
    out << line;
  }
}

}  // namespace fdp
