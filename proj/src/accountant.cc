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

#include "fdp/accountant.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "fdp/normal.h"
#include "fdp/numeric.h"
#include "fdp/status_macros.h"
#include "json.hpp"

namespace fdp {
namespace {

template <typename T>
absl::StatusOr<T> Require(const std::optional<T>& field, const char* name) {
  if (!field.has_value()) {
    return absl::InvalidArgumentError(
        absl::StrCat("missing required parameter '", name, "'"));
  }
  return *field;
}

absl::StatusOr<double> RequirePositive(const std::optional<double>& field,
                                       const char* name) {
  FDP_ASSIGN_OR_RETURN(const double v, Require(field, name));
  if (!(v > 0.0) || !std::isfinite(v)) {
    return absl::InvalidArgumentError(
        absl::StrCat("parameter '", name, "' must be positive, got ", v));
  }
  return v;
}

absl::StatusOr<double> RequireNonnegative(const std::optional<double>& field,
                                          const char* name) {
  FDP_ASSIGN_OR_RETURN(const double v, Require(field, name));
  if (!(v >= 0.0) || !std::isfinite(v)) {
    return absl::InvalidArgumentError(
        absl::StrCat("parameter '", name, "' must be nonnegative, got ", v));
  }
  return v;
}

absl::Status CheckKind(const AlgoParams& p, AlgoKind kind) {
  if (p.kind != kind) {
    return absl::InvalidArgumentError(
        absl::StrCat("bound expects kind '", AlgoKindName(kind), "', got '",
                     AlgoKindName(p.kind), "'"));
  }
  return absl::OkStatus();
}

// Constrained bounds need 0 < eta, and eta <= 2/M whenever M is known.
absl::StatusOr<double> ConstrainedStep(const AlgoParams& p) {
  FDP_ASSIGN_OR_RETURN(const double eta, RequirePositive(p.eta, "eta"));
  if (p.M.has_value()) {
    if (!(*p.M > 0.0)) {
      return absl::InvalidArgumentError("parameter 'M' must be positive");
    }
    if (eta > 2.0 / *p.M) {
      return absl::InvalidArgumentError(
          absl::StrCat("constrained bounds need eta <= 2/M, got eta=", eta,
                       " M=", *p.M));
    }
  }
  return eta;
}

double ScBracket(double c, double t) {
  const double ct = std::pow(c, t);
  return (1.0 - ct) / (1.0 + ct) * (1.0 + c) / (1.0 - c);
}

// e^{mu^2} Phi(1.5 mu) + 3 Phi(-0.5 mu) - 2, the CLT variance factor.
double CltVarianceFactor(double mu) {
  return std::exp(mu * mu) * NormalCdf(1.5 * mu) + 3.0 * NormalCdf(-0.5 * mu) -
         2.0;
}

struct SgdCore {
  double L;
  double sigma;
  std::int64_t n;
  std::int64_t b;
  std::int64_t t;
  double rate() const { return static_cast<double>(b) / static_cast<double>(n); }
  double unit() const { return L / (static_cast<double>(b) * sigma); }
};

absl::StatusOr<SgdCore> LoadSgd(const AlgoParams& p) {
  FDP_RETURN_IF_ERROR(CheckKind(p, AlgoKind::kSgd));
  FDP_RETURN_IF_ERROR(ValidateAlgoParams(p));
  SgdCore core;
  FDP_ASSIGN_OR_RETURN(core.L, RequireNonnegative(p.L, "L"));
  FDP_ASSIGN_OR_RETURN(core.sigma, RequirePositive(p.sigma, "sigma"));
  FDP_ASSIGN_OR_RETURN(core.n, Require(p.n, "n"));
  FDP_ASSIGN_OR_RETURN(core.b, Require(p.b, "b"));
  FDP_ASSIGN_OR_RETURN(core.t, Require(p.steps, "steps"));
  return core;
}

}  // namespace

const char* AlgoKindName(AlgoKind kind) {
  switch (kind) {
    case AlgoKind::kGd:
      return "gd";
    case AlgoKind::kCgd:
      return "cgd";
    case AlgoKind::kSgd:
      return "sgd";
  }
  return "unknown";
}

absl::StatusOr<AlgoKind> ParseAlgoKind(const std::string& name) {
  const std::string lower = absl::AsciiStrToLower(name);
  if (lower == "gd") return AlgoKind::kGd;
  if (lower == "cgd") return AlgoKind::kCgd;
  if (lower == "sgd") return AlgoKind::kSgd;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown algorithm kind '", name, "'"));
}

absl::Status ValidateAlgoParams(const AlgoParams& p) {
  if (p.n.has_value() && *p.n < 1) {
    return absl::InvalidArgumentError("parameter 'n' must be >= 1");
  }
  if (p.b.has_value()) {
    if (*p.b < 1) return absl::InvalidArgumentError("parameter 'b' must be >= 1");
    if (p.n.has_value() && *p.b > *p.n) {
      return absl::InvalidArgumentError("batch size 'b' exceeds 'n'");
    }
  }
  if (p.steps.has_value() && *p.steps < 1) {
    return absl::InvalidArgumentError("parameter 'steps' must be >= 1");
  }
  if (p.epochs.has_value() && *p.epochs < 1) {
    return absl::InvalidArgumentError("parameter 'epochs' must be >= 1");
  }
  for (const auto& [field, name] :
       {std::pair{p.eta, "eta"}, std::pair{p.sigma, "sigma"},
        std::pair{p.L, "L"}, std::pair{p.m, "m"}, std::pair{p.M, "M"},
        std::pair{p.D, "D"}}) {
    if (field.has_value() && (std::isnan(*field) || *field < 0.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("parameter '", name, "' must be nonnegative"));
    }
  }
  if (p.m.has_value() && p.M.has_value() && *p.m > *p.M) {
    return absl::InvalidArgumentError("strong convexity m exceeds smoothness M");
  }
  if (p.kind == AlgoKind::kCgd && p.n.has_value() && p.b.has_value() &&
      *p.n % *p.b != 0) {
    return absl::InvalidArgumentError(
        "cyclic batches need n to be a multiple of b");
  }
  return absl::OkStatus();
}

absl::StatusOr<double> Contraction(const AlgoParams& p) {
  FDP_ASSIGN_OR_RETURN(const double eta, RequirePositive(p.eta, "eta"));
  FDP_ASSIGN_OR_RETURN(const double m, RequirePositive(p.m, "m"));
  FDP_ASSIGN_OR_RETURN(const double M, RequirePositive(p.M, "M"));
  if (m > M) {
    return absl::InvalidArgumentError("strong convexity m exceeds smoothness M");
  }
  if (!(eta < 2.0 / M)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "strongly convex bounds need 0 < eta < 2/M, got eta=", eta, " M=", M));
  }
  const double c = std::max(std::abs(1.0 - eta * m), std::abs(1.0 - eta * M));
  if (!(c < 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "contraction factor c=", c,
        " is not below 1; use the constrained convex bound"));
  }
  return c;
}

absl::StatusOr<std::int64_t> BatchesPerEpoch(const AlgoParams& p) {
  FDP_ASSIGN_OR_RETURN(const std::int64_t n, Require(p.n, "n"));
  FDP_ASSIGN_OR_RETURN(const std::int64_t b, Require(p.b, "b"));
  if (b < 1 || n < b || n % b != 0) {
    return absl::InvalidArgumentError(
        "cyclic batches need n to be a positive multiple of b");
  }
  return n / b;
}

absl::StatusOr<std::int64_t> TotalSteps(const AlgoParams& p) {
  if (p.kind != AlgoKind::kCgd) return Require(p.steps, "steps");
  FDP_ASSIGN_OR_RETURN(const std::int64_t l, BatchesPerEpoch(p));
  FDP_ASSIGN_OR_RETURN(const std::int64_t E, Require(p.epochs, "epochs"));
  if (p.steps.has_value() && *p.steps != l * E) {
    return absl::InvalidArgumentError(absl::StrCat(
        "steps=", *p.steps, " disagrees with l*E=", l * E));
  }
  return l * E;
}

absl::StatusOr<double> BoundGdComposition(const AlgoParams& p) {
  FDP_RETURN_IF_ERROR(ValidateAlgoParams(p));
  FDP_ASSIGN_OR_RETURN(const double L, RequireNonnegative(p.L, "L"));
  FDP_ASSIGN_OR_RETURN(const double sigma, RequirePositive(p.sigma, "sigma"));
  FDP_ASSIGN_OR_RETURN(const std::int64_t n, Require(p.n, "n"));
  FDP_ASSIGN_OR_RETURN(const std::int64_t t, Require(p.steps, "steps"));
  return L * std::sqrt(static_cast<double>(t)) /
         (static_cast<double>(n) * sigma);
}

absl::StatusOr<double> BoundGdSc(const AlgoParams& p) {
  FDP_RETURN_IF_ERROR(ValidateAlgoParams(p));
  FDP_ASSIGN_OR_RETURN(const double c, Contraction(p));
  FDP_ASSIGN_OR_RETURN(const double L, RequireNonnegative(p.L, "L"));
  FDP_ASSIGN_OR_RETURN(const double sigma, RequirePositive(p.sigma, "sigma"));
  FDP_ASSIGN_OR_RETURN(const std::int64_t n, Require(p.n, "n"));
  FDP_ASSIGN_OR_RETURN(const std::int64_t t, Require(p.steps, "steps"));
  return std::sqrt(ScBracket(c, static_cast<double>(t))) * L /
         (static_cast<double>(n) * sigma);
}

absl::StatusOr<double> BoundGdProj(const AlgoParams& p,
                                   std::optional<std::int64_t> tau) {
  FDP_RETURN_IF_ERROR(ValidateAlgoParams(p));
  FDP_ASSIGN_OR_RETURN(const double eta, ConstrainedStep(p));
  FDP_ASSIGN_OR_RETURN(const double L, RequireNonnegative(p.L, "L"));
  FDP_ASSIGN_OR_RETURN(const double D, RequireNonnegative(p.D, "D"));
  FDP_ASSIGN_OR_RETURN(const double sigma, RequirePositive(p.sigma, "sigma"));
  FDP_ASSIGN_OR_RETURN(const std::int64_t n_int, Require(p.n, "n"));
  FDP_ASSIGN_OR_RETURN(const std::int64_t t, Require(p.steps, "steps"));
  const double n = static_cast<double>(n_int);
  if (tau.has_value()) {
    if (*tau < 0 || *tau >= t) {
      return absl::InvalidArgumentError(
          absl::StrCat("need 0 <= tau < t, got tau=", *tau, " t=", t));
    }
    const double span = static_cast<double>(t - *tau);
    return L * std::sqrt(span) / (n * sigma) +
           D / (eta * sigma * std::sqrt(span));
  }
  if (L == 0.0) return 0.0;
  const std::int64_t k = std::max<std::int64_t>(1, CeilSnapped(D * n / (eta * L)));
  if (t < k) {
    return absl::InvalidArgumentError(absl::StrCat(
        "plateau bound needs t >= D n / (eta L) = ", D * n / (eta * L),
        "; pass tau for the general form"));
  }
  const double ln = L / n;
  return std::sqrt(3.0 * L * D / (eta * n) + ln * ln * static_cast<double>(k)) /
         sigma;
}

absl::StatusOr<double> BoundCgdComposition(const AlgoParams& p) {
  FDP_RETURN_IF_ERROR(ValidateAlgoParams(p));
  FDP_ASSIGN_OR_RETURN(const double L, RequireNonnegative(p.L, "L"));
  FDP_ASSIGN_OR_RETURN(const double sigma, RequirePositive(p.sigma, "sigma"));
  FDP_ASSIGN_OR_RETURN(const std::int64_t b, Require(p.b, "b"));
  FDP_ASSIGN_OR_RETURN(const std::int64_t E, Require(p.epochs, "epochs"));
  return L * std::sqrt(static_cast<double>(E)) /
         (static_cast<double>(b) * sigma);
}

absl::StatusOr<double> BoundCgdSc(const AlgoParams& p) {
  FDP_RETURN_IF_ERROR(CheckKind(p, AlgoKind::kCgd));
  FDP_RETURN_IF_ERROR(ValidateAlgoParams(p));
  FDP_ASSIGN_OR_RETURN(const double c, Contraction(p));
  FDP_ASSIGN_OR_RETURN(const double L, RequireNonnegative(p.L, "L"));
  FDP_ASSIGN_OR_RETURN(const double sigma, RequirePositive(p.sigma, "sigma"));
  FDP_ASSIGN_OR_RETURN(const std::int64_t l, BatchesPerEpoch(p));
  FDP_ASSIGN_OR_RETURN(const std::int64_t E, Require(p.epochs, "epochs"));
  FDP_RETURN_IF_ERROR(TotalSteps(p).status());
  const double unit = L / (static_cast<double>(*p.b) * sigma);
  const double ld = static_cast<double>(l);
  const double cl = std::pow(c, ld);
  const double tail = std::pow(c, ld * static_cast<double>(E - 1));
  const double extra = std::pow(c, 2.0 * ld - 2.0) * (1.0 - c * c) /
                       ((1.0 - cl) * (1.0 - cl)) * (1.0 - tail) / (1.0 + tail);
  return unit * std::sqrt(1.0 + extra);
}

absl::StatusOr<double> BoundCgdProj(const AlgoParams& p) {
  FDP_RETURN_IF_ERROR(CheckKind(p, AlgoKind::kCgd));
  FDP_RETURN_IF_ERROR(ValidateAlgoParams(p));
  FDP_ASSIGN_OR_RETURN(const double eta, ConstrainedStep(p));
  FDP_ASSIGN_OR_RETURN(const double L, RequireNonnegative(p.L, "L"));
  FDP_ASSIGN_OR_RETURN(const double D, RequireNonnegative(p.D, "D"));
  FDP_ASSIGN_OR_RETURN(const double sigma, RequirePositive(p.sigma, "sigma"));
  FDP_ASSIGN_OR_RETURN(const std::int64_t l_int, BatchesPerEpoch(p));
  FDP_ASSIGN_OR_RETURN(const std::int64_t E, Require(p.epochs, "epochs"));
  FDP_RETURN_IF_ERROR(TotalSteps(p).status());
  if (L == 0.0) return 0.0;
  const double b = static_cast<double>(*p.b);
  const double l = static_cast<double>(l_int);
  const double threshold = D * b / (eta * L);
  // No floor at 1 here: the leading (L/b)^2 already covers the last step.
  const std::int64_t k = CeilSnapped(threshold);
  if (E < k) {
    return absl::InvalidArgumentError(absl::StrCat(
        "constrained cyclic bound needs E >= D b / (eta L) = ", threshold));
  }
  const double lb = L / b;
  return std::sqrt(lb * lb + 3.0 * L * D / (eta * b * l) +
                   lb * lb / l * static_cast<double>(k)) /
         sigma;
}

absl::StatusOr<CompositeBound> BoundSgdComposition(const AlgoParams& p) {
  FDP_ASSIGN_OR_RETURN(const SgdCore core, LoadSgd(p));
  return CompositeBound{
      {SubsampledGdpFactor{core.unit(), core.rate(), core.t}}};
}

absl::StatusOr<CompositeBound> BoundSgdSc(const AlgoParams& p,
                                          std::int64_t tau) {
  FDP_ASSIGN_OR_RETURN(const SgdCore core, LoadSgd(p));
  FDP_ASSIGN_OR_RETURN(const double c, Contraction(p));
  if (tau < 0 || tau >= core.t) {
    return absl::InvalidArgumentError(
        absl::StrCat("need 0 <= tau <= t-1, got tau=", tau, " t=", core.t));
  }
  const std::int64_t start = std::max<std::int64_t>(tau, 1);
  const double t = static_cast<double>(core.t);
  const double coef =
      (std::pow(c, t - static_cast<double>(start) + 1.0) - std::pow(c, t)) /
      (1.0 - c);
  const double unit = core.unit();
  CompositeBound cb;
  cb.factors.push_back(GdpFactor{2.0 * std::sqrt(2.0) * unit * std::max(coef, 0.0)});
  cb.factors.push_back(
      SubsampledGdpFactor{2.0 * std::sqrt(2.0) * unit, core.rate(), 1});
  if (core.t - start > 0) {
    cb.factors.push_back(
        SubsampledGdpFactor{2.0 * unit, core.rate(), core.t - start});
  }
  return cb;
}

absl::StatusOr<CompositeBound> BoundSgdProj(const AlgoParams& p,
                                            std::int64_t tau) {
  FDP_ASSIGN_OR_RETURN(const SgdCore core, LoadSgd(p));
  FDP_ASSIGN_OR_RETURN(const double eta, ConstrainedStep(p));
  FDP_ASSIGN_OR_RETURN(const double D, RequireNonnegative(p.D, "D"));
  if (tau < 0 || tau >= core.t) {
    return absl::InvalidArgumentError(
        absl::StrCat("need 0 <= tau <= t-1, got tau=", tau, " t=", core.t));
  }
  const std::int64_t span = core.t - tau;
  CompositeBound cb;
  cb.factors.push_back(GdpFactor{std::sqrt(2.0) * D /
                                 (eta * core.sigma *
                                  std::sqrt(static_cast<double>(span)))});
  cb.factors.push_back(SubsampledGdpFactor{2.0 * std::sqrt(2.0) * core.unit(),
                                           core.rate(), span});
  return cb;
}

std::vector<std::int64_t> TauSweepCandidates(std::int64_t t_max,
                                             int max_candidates) {
  std::vector<std::int64_t> out;
  if (t_max < 1) return out;
  const int count = std::max(2, max_candidates);
  const double log_max = std::log(static_cast<double>(t_max));
  for (int i = 0; i < count; ++i) {
    const double frac = static_cast<double>(i) / (count - 1);
    out.push_back(std::clamp<std::int64_t>(
        static_cast<std::int64_t>(std::llround(std::exp(frac * log_max))), 1,
        t_max));
  }
  out.push_back(1);
  out.push_back(t_max);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

absl::StatusOr<TauSweepResult> SweepSgdTau(const AlgoParams& p,
                                           std::span<const double> eps_list,
                                           const GridSpec& spec,
                                           int max_candidates) {
  FDP_ASSIGN_OR_RETURN(const SgdCore core, LoadSgd(p));
  // For the strongly convex bound tau = 0 duplicates tau = 1.
  const std::int64_t t_max = p.constrained ? core.t : std::max<std::int64_t>(1, core.t - 1);
  TauSweepResult result;
  result.candidates = TauSweepCandidates(t_max, max_candidates);
  result.best.reserve(eps_list.size());
  for (double eps : eps_list) result.best.push_back({eps, 2.0, 0.0});
  result.argbest.assign(eps_list.size(), 0);
  for (const std::int64_t span : result.candidates) {
    const std::int64_t tau = core.t - span;
    CompositeBound cb;
    if (p.constrained) {
      FDP_ASSIGN_OR_RETURN(cb, BoundSgdProj(p, tau));
    } else {
      FDP_ASSIGN_OR_RETURN(cb, BoundSgdSc(p, tau));
    }
    FDP_ASSIGN_OR_RETURN(const std::vector<DeltaRow> rows,
                         EvaluateComposite(cb, eps_list, spec));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].delta < result.best[i].delta) {
        result.best[i] = rows[i];
        result.argbest[i] = span;
      }
    }
  }
  return result;
}

absl::StatusOr<std::int64_t> CrossoverStep(double convergent_mu,
                                           double composition_rate) {
  if (!(composition_rate > 0.0) || !(convergent_mu >= 0.0) ||
      !std::isfinite(convergent_mu)) {
    return absl::InvalidArgumentError(
        "crossover needs mu >= 0 and a positive composition rate");
  }
  const double ratio = convergent_mu / composition_rate;
  return std::max<std::int64_t>(1, CeilSnapped(ratio * ratio));
}

absl::StatusOr<double> CltSubsampled(double mu, double p, double t) {
  if (!(mu >= 0.0) || !std::isfinite(mu)) {
    return absl::InvalidArgumentError("mu must be finite and nonnegative");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    return absl::InvalidArgumentError("p must lie in [0, 1]");
  }
  if (!(t >= 0.0)) return absl::InvalidArgumentError("t must be nonnegative");
  return std::sqrt(2.0) * p * std::sqrt(t) *
         std::sqrt(std::max(0.0, CltVarianceFactor(mu)));
}

absl::StatusOr<double> CltSgdScMu(const AlgoParams& p, double t_minus_tau) {
  FDP_ASSIGN_OR_RETURN(const SgdCore core, LoadSgd(p));
  FDP_ASSIGN_OR_RETURN(const double c, Contraction(p));
  const double gdp = core.unit() * std::pow(c, t_minus_tau + 1.0) / (1.0 - c);
  const double k = CltVarianceFactor(2.0 * core.unit());
  const double rate = core.rate();
  return std::sqrt(8.0 * gdp * gdp + 2.0 * rate * rate * t_minus_tau * k);
}

absl::StatusOr<CltChoice> CltSgdSc(const AlgoParams& p) {
  FDP_ASSIGN_OR_RETURN(const SgdCore core, LoadSgd(p));
  FDP_ASSIGN_OR_RETURN(const double c, Contraction(p));
  if (core.L == 0.0) return CltChoice{1, 0.0, 1.0};
  const double b = static_cast<double>(core.b);
  const double n = static_cast<double>(core.n);
  const double log_inv_c = -std::log(c);
  const double k = CltVarianceFactor(2.0 * core.unit());
  const double arg = b * b * core.sigma * (1.0 - c) * std::sqrt(k) /
                     (2.0 * std::sqrt(2.0) * n * core.L * std::sqrt(log_inv_c));
  const double continuous = -std::log(arg) / log_inv_c - 1.0;
  CltChoice best{0, std::numeric_limits<double>::infinity(), continuous};
  for (const double candidate : {std::floor(continuous), std::ceil(continuous)}) {
    const std::int64_t span = std::clamp<std::int64_t>(
        static_cast<std::int64_t>(candidate), 1, core.t);
    FDP_ASSIGN_OR_RETURN(const double mu,
                         CltSgdScMu(p, static_cast<double>(span)));
    if (mu < best.mu) {
      best.mu = mu;
      best.t_minus_tau = span;
    }
  }
  return best;
}

absl::StatusOr<double> CltSgdProjMu(const AlgoParams& p, double t_minus_tau) {
  FDP_ASSIGN_OR_RETURN(const SgdCore core, LoadSgd(p));
  FDP_ASSIGN_OR_RETURN(const double eta, ConstrainedStep(p));
  FDP_ASSIGN_OR_RETURN(const double D, RequireNonnegative(p.D, "D"));
  if (!(t_minus_tau > 0.0)) {
    return absl::InvalidArgumentError("t - tau must be positive");
  }
  const double k = CltVarianceFactor(2.0 * std::sqrt(2.0) * core.unit());
  const double rate = core.rate();
  return std::sqrt(2.0 * D * D / (eta * eta * core.sigma * core.sigma *
                                  t_minus_tau) +
                   2.0 * rate * rate * t_minus_tau * k);
}

absl::StatusOr<CltChoice> CltSgdProj(const AlgoParams& p) {
  FDP_ASSIGN_OR_RETURN(const SgdCore core, LoadSgd(p));
  FDP_ASSIGN_OR_RETURN(const double eta, ConstrainedStep(p));
  FDP_ASSIGN_OR_RETURN(const double D, RequireNonnegative(p.D, "D"));
  if (D == 0.0) {
    return absl::InvalidArgumentError(
        "the constrained approximation is degenerate for D = 0");
  }
  if (core.L == 0.0) return CltChoice{core.t, 0.0, static_cast<double>(core.t)};
  const double k = CltVarianceFactor(2.0 * std::sqrt(2.0) * core.unit());
  const double continuous = D * static_cast<double>(core.n) /
                            (static_cast<double>(core.b) * eta * core.sigma *
                             std::sqrt(k));
  CltChoice best{0, std::numeric_limits<double>::infinity(), continuous};
  for (const double candidate : {std::floor(continuous), std::ceil(continuous)}) {
    const std::int64_t span = std::clamp<std::int64_t>(
        static_cast<std::int64_t>(candidate), 1, core.t);
    FDP_ASSIGN_OR_RETURN(const double mu,
                         CltSgdProjMu(p, static_cast<double>(span)));
    if (mu < best.mu) {
      best.mu = mu;
      best.t_minus_tau = span;
    }
  }
  return best;
}

absl::StatusOr<double> ExpMechSc(double L, double m) {
  if (!(L >= 0.0) || !(m > 0.0)) {
    return absl::InvalidArgumentError("need L >= 0 and m > 0");
  }
  return L / std::sqrt(m);
}

absl::StatusOr<double> LmcSc(double L, double m, double eta, std::int64_t t) {
  if (!(L >= 0.0) || !(m > 0.0) || !(eta > 0.0) || t < 1) {
    return absl::InvalidArgumentError("need L >= 0, m > 0, eta > 0, t >= 1");
  }
  const double c = std::abs(1.0 - eta * m);
  if (!(c < 1.0)) {
    return absl::InvalidArgumentError("LMC needs 0 < eta < 2/m");
  }
  // Noise sqrt(2 eta) Z equals eta * sigma Z with sigma = sqrt(2 / eta).
  return std::sqrt(ScBracket(c, static_cast<double>(t))) * L *
         std::sqrt(0.5 * eta);
}

absl::StatusOr<double> LmcStationarySc(double L, double m, double eta) {
  if (!(L >= 0.0) || !(m > 0.0) || !(eta >= 0.0) || !(eta * m < 2.0)) {
    return absl::InvalidArgumentError("need L >= 0, m > 0, 0 <= eta < 2/m");
  }
  return std::sqrt((2.0 - eta * m) / 2.0) * L / std::sqrt(m);
}

absl::StatusOr<double> ExpMechConvex(double L, double D,
                                     std::optional<double> eta) {
  if (!(L >= 0.0) || !(D >= 0.0)) {
    return absl::InvalidArgumentError("need L >= 0 and D >= 0");
  }
  if (!eta.has_value()) return 2.0 * std::sqrt(L * D);
  if (!(*eta >= 0.0)) return absl::InvalidArgumentError("need eta >= 0");
  return std::sqrt(4.0 * L * D + 2.0 * *eta * L * L);
}

double ExpMechPureDpThreshold() {
  auto gap = [](double x) {
    const double r = std::sqrt(x);
    return 2.0 * x - (std::log(NormalCdf(r)) - LogNormalCdf(-r));
  };
  return Bisect(gap, 1e-3, 4.0, 1e-13);
}

std::string ReportToJson(const PrivacyReport& report) {
  nlohmann::ordered_json doc;
  doc["bound"] = report.bound;
  if (report.mu.has_value()) doc["mu"] = *report.mu;
  if (report.curve_ref.has_value()) doc["curve_ref"] = *report.curve_ref;
  if (report.composite.has_value()) {
    nlohmann::ordered_json factors = nlohmann::ordered_json::array();
    for (const CompositeFactor& f : report.composite->factors) {
      nlohmann::ordered_json item;
      if (const auto* g = std::get_if<GdpFactor>(&f)) {
        item["type"] = "gdp";
        item["mu"] = g->mu;
      } else {
        const auto& s = std::get<SubsampledGdpFactor>(f);
        item["type"] = "subsampled_gdp";
        item["mu"] = s.mu;
        item["p"] = s.p;
        item["multiplicity"] = s.multiplicity;
      }
      factors.push_back(item);
    }
    doc["composite"] = factors;
  }
  if (report.best_t_minus_tau.has_value()) {
    doc["best_t_minus_tau"] = *report.best_t_minus_tau;
  }
  nlohmann::ordered_json conversions;
  conversions["eps_at_delta"] = nlohmann::ordered_json::array();
  for (const EpsDelta& ed : report.eps_at_delta) {
    conversions["eps_at_delta"].push_back({{"delta", ed.delta}, {"eps", ed.eps}});
  }
  if (!report.delta_at_eps.empty()) {
    conversions["delta_at_eps"] = nlohmann::ordered_json::array();
    for (const DeltaRow& row : report.delta_at_eps) {
      conversions["delta_at_eps"].push_back({{"eps", row.eps},
                                             {"delta", row.delta},
                                             {"uncertainty", row.uncertainty}});
    }
  }
  doc["conversions"] = conversions;
  return doc.dump(2);
}

}  // namespace fdp
