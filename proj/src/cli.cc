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

#include "fdp/cli.h"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "fdp/accountant.h"
#include "fdp/conversions.h"
#include "fdp/oracle.h"
#include "fdp/prv.h"
#include "fdp/schedule.h"
#include "fdp/status_macros.h"
#include "fdp/tables.h"
#include "fdp/tradeoff.h"
#include "json.hpp"

namespace fdp {
namespace {

using Json = nlohmann::json;

// Everything a subcommand may read, after merging the config file and flags.
struct RunConfig {
  std::string command;
  AlgoParams params;
  std::optional<std::string> setting;  // "sc" or "proj"
  bool composition = false;
  std::optional<std::int64_t> tau;
  std::optional<double> leff;
  std::vector<double> deltas;
  std::vector<double> eps;
  std::optional<std::string> out;
  std::uint64_t seed = 0;
  int grid = kDefaultGridSize;
  double mesh = GridSpec{}.mesh;
  std::string curve_type = "bound";
  std::string format = "tradeoff";
  std::optional<double> mu;
  std::optional<double> p;
  double eps_min = 0.0;
  double eps_max = 8.0;
  int eps_count = 81;
  std::string from = "gdp";
  std::string to = "eps-delta";
  std::optional<double> rho;
  std::optional<double> alpha;
  std::string table = "all";
  std::int64_t trials = 200000;
  double tamper = 1.0;
};

template <typename T>
absl::Status Read(const Json& doc, const char* key, std::optional<T>& dst) {
  if (!doc.contains(key) || doc[key].is_null()) return absl::OkStatus();
  try {
    dst = doc[key].get<T>();
  } catch (const Json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("config field '", key, "' has the wrong type"));
  }
  return absl::OkStatus();
}

template <typename T>
absl::Status Read(const Json& doc, const char* key, T& dst) {
  std::optional<T> value;
  FDP_RETURN_IF_ERROR(Read(doc, key, value));
  if (value.has_value()) dst = *value;
  return absl::OkStatus();
}

absl::StatusOr<RunConfig> ParseConfig(const Json& doc) {
  if (!doc.is_object()) {
    return absl::InvalidArgumentError("config must be a JSON object");
  }
  RunConfig cfg;
  std::string kind = "gd";
  FDP_RETURN_IF_ERROR(Read(doc, "kind", kind));
  FDP_ASSIGN_OR_RETURN(cfg.params.kind, ParseAlgoKind(kind));
  AlgoParams& p = cfg.params;
  FDP_RETURN_IF_ERROR(Read(doc, "eta", p.eta));
  FDP_RETURN_IF_ERROR(Read(doc, "sigma", p.sigma));
  FDP_RETURN_IF_ERROR(Read(doc, "n", p.n));
  FDP_RETURN_IF_ERROR(Read(doc, "b", p.b));
  FDP_RETURN_IF_ERROR(Read(doc, "epochs", p.epochs));
  FDP_RETURN_IF_ERROR(Read(doc, "steps", p.steps));
  FDP_RETURN_IF_ERROR(Read(doc, "L", p.L));
  FDP_RETURN_IF_ERROR(Read(doc, "m", p.m));
  FDP_RETURN_IF_ERROR(Read(doc, "M", p.M));
  FDP_RETURN_IF_ERROR(Read(doc, "D", p.D));
  FDP_RETURN_IF_ERROR(Read(doc, "setting", cfg.setting));
  FDP_RETURN_IF_ERROR(Read(doc, "composition", cfg.composition));
  FDP_RETURN_IF_ERROR(Read(doc, "tau", cfg.tau));
  FDP_RETURN_IF_ERROR(Read(doc, "leff", cfg.leff));
  FDP_RETURN_IF_ERROR(Read(doc, "delta", cfg.deltas));
  FDP_RETURN_IF_ERROR(Read(doc, "eps", cfg.eps));
  FDP_RETURN_IF_ERROR(Read(doc, "out", cfg.out));
  FDP_RETURN_IF_ERROR(Read(doc, "seed", cfg.seed));
  FDP_RETURN_IF_ERROR(Read(doc, "grid", cfg.grid));
  FDP_RETURN_IF_ERROR(Read(doc, "mesh", cfg.mesh));
  FDP_RETURN_IF_ERROR(Read(doc, "type", cfg.curve_type));
  FDP_RETURN_IF_ERROR(Read(doc, "format", cfg.format));
  FDP_RETURN_IF_ERROR(Read(doc, "mu", cfg.mu));
  FDP_RETURN_IF_ERROR(Read(doc, "p", cfg.p));
  FDP_RETURN_IF_ERROR(Read(doc, "eps_min", cfg.eps_min));
  FDP_RETURN_IF_ERROR(Read(doc, "eps_max", cfg.eps_max));
  FDP_RETURN_IF_ERROR(Read(doc, "eps_count", cfg.eps_count));
  FDP_RETURN_IF_ERROR(Read(doc, "from", cfg.from));
  FDP_RETURN_IF_ERROR(Read(doc, "to", cfg.to));
  FDP_RETURN_IF_ERROR(Read(doc, "rho", cfg.rho));
  FDP_RETURN_IF_ERROR(Read(doc, "alpha", cfg.alpha));
  FDP_RETURN_IF_ERROR(Read(doc, "table", cfg.table));
  FDP_RETURN_IF_ERROR(Read(doc, "trials", cfg.trials));
  FDP_RETURN_IF_ERROR(Read(doc, "tamper", cfg.tamper));
  if (cfg.setting.has_value() && *cfg.setting != "sc" &&
      *cfg.setting != "proj") {
    return absl::InvalidArgumentError(
        absl::StrCat("setting must be 'sc' or 'proj', got '", *cfg.setting, "'"));
  }
  p.constrained = cfg.setting == "proj";
  // leff is L over (batch * sigma); fill in the fields it stands for.
  if (cfg.leff.has_value()) {
    if (!(*cfg.leff >= 0.0)) {
      return absl::InvalidArgumentError("leff must be nonnegative");
    }
    if (p.L.has_value()) {
      return absl::InvalidArgumentError("give either leff or L, not both");
    }
    if (!p.sigma) p.sigma = 1.0;
    if (!p.n) p.n = 1;
    if (p.kind != AlgoKind::kGd && !p.b) p.b = 1;
    const double batch =
        static_cast<double>(p.kind == AlgoKind::kGd ? *p.n : *p.b);
    p.L = *cfg.leff * batch * *p.sigma;
  }
  if (cfg.grid < 3) return absl::InvalidArgumentError("grid must be >= 3");
  if (cfg.eps_count < 1) {
    return absl::InvalidArgumentError("eps_count must be >= 1");
  }
  if (cfg.trials < 1) return absl::InvalidArgumentError("trials must be >= 1");
  if (!(cfg.tamper > 0.0)) {
    return absl::InvalidArgumentError("tamper must be positive");
  }
  FDP_RETURN_IF_ERROR(ValidateAlgoParams(p));
  return cfg;
}

std::string SettingName(const RunConfig& cfg) {
  if (cfg.composition) return "composition";
  return cfg.setting.value_or("");
}

GridSpec PrvSpec(const RunConfig& cfg) {
  GridSpec spec;
  spec.mesh = cfg.mesh;
  return spec;
}

struct BoundOutcome {
  PrivacyReport report;
  std::optional<PrvGrid> prv;  // SGD only
};

absl::StatusOr<std::int64_t> DefaultSgdTau(const RunConfig& cfg) {
  if (cfg.tau.has_value()) return *cfg.tau;
  FDP_ASSIGN_OR_RETURN(const std::int64_t t, TotalSteps(cfg.params));
  CltChoice choice;
  if (cfg.params.constrained) {
    FDP_ASSIGN_OR_RETURN(choice, CltSgdProj(cfg.params));
  } else {
    FDP_ASSIGN_OR_RETURN(choice, CltSgdSc(cfg.params));
  }
  return t - choice.t_minus_tau;
}

absl::StatusOr<double> GdpBound(const RunConfig& cfg) {
  const AlgoParams& p = cfg.params;
  const std::string setting = SettingName(cfg);
  if (setting.empty()) {
    return absl::InvalidArgumentError(
        "choose a setting: --sc, --proj or --composition");
  }
  if (p.kind == AlgoKind::kGd) {
    if (setting == "composition") return BoundGdComposition(p);
    if (setting == "sc") return BoundGdSc(p);
    return BoundGdProj(p, cfg.tau);
  }
  if (setting == "composition") return BoundCgdComposition(p);
  if (setting == "sc") return BoundCgdSc(p);
  return BoundCgdProj(p);
}

absl::StatusOr<CompositeBound> SgdComposite(const RunConfig& cfg,
                                            std::int64_t* tau_out) {
  const std::string setting = SettingName(cfg);
  if (setting.empty()) {
    return absl::InvalidArgumentError(
        "choose a setting: --sc, --proj or --composition");
  }
  if (setting == "composition") return BoundSgdComposition(cfg.params);
  FDP_ASSIGN_OR_RETURN(const std::int64_t tau, DefaultSgdTau(cfg));
  if (tau_out) *tau_out = tau;
  if (setting == "sc") return BoundSgdSc(cfg.params, tau);
  return BoundSgdProj(cfg.params, tau);
}

absl::StatusOr<BoundOutcome> ComputeBound(const RunConfig& cfg) {
  BoundOutcome outcome;
  PrivacyReport& report = outcome.report;
  report.bound = absl::StrCat(AlgoKindName(cfg.params.kind), "-",
                              SettingName(cfg));
  const std::vector<double> deltas =
      cfg.deltas.empty() ? std::vector<double>{1e-5} : cfg.deltas;
  if (cfg.params.kind != AlgoKind::kSgd) {
    FDP_ASSIGN_OR_RETURN(const double mu, GdpBound(cfg));
    report.mu = mu;
    for (double delta : deltas) {
      FDP_ASSIGN_OR_RETURN(const double eps, GdpToEps(mu, delta));
      report.eps_at_delta.push_back({eps, delta});
    }
    for (double eps : cfg.eps) {
      FDP_ASSIGN_OR_RETURN(const double delta, GdpToDelta(mu, eps));
      report.delta_at_eps.push_back({eps, delta, 0.0});
    }
    return outcome;
  }
  std::int64_t tau = -1;
  FDP_ASSIGN_OR_RETURN(CompositeBound cb, SgdComposite(cfg, &tau));
  FDP_ASSIGN_OR_RETURN(const std::int64_t t, TotalSteps(cfg.params));
  if (tau >= 0) report.best_t_minus_tau = t - tau;
  FDP_ASSIGN_OR_RETURN(PrvGrid prv, ComposeToPrv(cb, PrvSpec(cfg)));
  for (double delta : deltas) {
    FDP_ASSIGN_OR_RETURN(const double eps, PrvEpsAt(prv, delta));
    report.eps_at_delta.push_back({eps, delta});
  }
  for (double eps : cfg.eps) {
    const PrvDelta d = PrvDeltaAt(prv, eps);
    report.delta_at_eps.push_back({eps, d.delta, d.uncertainty()});
  }
  report.composite = std::move(cb);
  outcome.prv = std::move(prv);
  return outcome;
}

absl::Status Emit(const RunConfig& cfg, const std::string& text,
                  std::ostream& out) {
  if (!cfg.out.has_value() || *cfg.out == "-") {
    out << text;
    return absl::OkStatus();
  }
  std::ofstream file(*cfg.out, std::ios::binary);
  if (!file) {
    return absl::InvalidArgumentError(
        absl::StrCat("cannot open output file '", *cfg.out, "'"));
  }
  file << text;
  file.close();
  if (!file) {
    return absl::InternalError(absl::StrCat("failed writing '", *cfg.out, "'"));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::string> CmdBound(const RunConfig& cfg) {
  FDP_ASSIGN_OR_RETURN(BoundOutcome outcome, ComputeBound(cfg));
  return ReportToJson(outcome.report) + "\n";
}

std::vector<double> EpsGrid(const RunConfig& cfg) {
  if (!cfg.eps.empty()) return cfg.eps;
  std::vector<double> grid(cfg.eps_count);
  for (int i = 0; i < cfg.eps_count; ++i) {
    grid[i] = cfg.eps_count == 1
                  ? cfg.eps_min
                  : cfg.eps_min + (cfg.eps_max - cfg.eps_min) * i /
                                      (cfg.eps_count - 1);
  }
  return grid;
}

absl::StatusOr<double> RequireValue(const std::optional<double>& v,
                                    const char* name) {
  if (!v.has_value()) {
    return absl::InvalidArgumentError(
        absl::StrCat("missing required parameter '", name, "'"));
  }
  return *v;
}

absl::StatusOr<std::string> CmdCurve(const RunConfig& cfg) {
  std::ostringstream os;
  const std::string& type = cfg.curve_type;
  if (cfg.format != "tradeoff" && cfg.format != "delta") {
    return absl::InvalidArgumentError(
        absl::StrCat("format must be 'tradeoff' or 'delta', got '", cfg.format,
                     "'"));
  }
  const bool as_delta = cfg.format == "delta";
  std::optional<double> gdp_mu;
  std::optional<CompositeBound> composite;
  if (type == "identity") {
    gdp_mu = 0.0;
  } else if (type == "gdp") {
    FDP_ASSIGN_OR_RETURN(gdp_mu, RequireValue(cfg.mu, "mu"));
  } else if (type == "subsampled") {
    FDP_ASSIGN_OR_RETURN(const double mu, RequireValue(cfg.mu, "mu"));
    FDP_ASSIGN_OR_RETURN(const double p, RequireValue(cfg.p, "p"));
    composite = CompositeBound{{SubsampledGdpFactor{mu, p, 1}}};
  } else if (type == "bound") {
    if (cfg.params.kind == AlgoKind::kSgd) {
      FDP_ASSIGN_OR_RETURN(composite, SgdComposite(cfg, nullptr));
    } else {
      FDP_ASSIGN_OR_RETURN(gdp_mu, GdpBound(cfg));
    }
  } else {
    return absl::InvalidArgumentError(absl::StrCat(
        "curve type must be identity, gdp, subsampled or bound; got '", type,
        "'"));
  }

  if (as_delta) {
    const std::vector<double> eps = EpsGrid(cfg);
    std::vector<DeltaRow> rows;
    if (gdp_mu.has_value()) {
      for (double e : eps) {
        FDP_ASSIGN_OR_RETURN(const double d, GdpToDelta(*gdp_mu, e));
        rows.push_back({e, d, 0.0});
      }
    } else {
      FDP_ASSIGN_OR_RETURN(rows,
                           EvaluateComposite(*composite, eps, PrvSpec(cfg)));
    }
    WriteDeltaCsv(rows, os);
    return os.str();
  }

  std::optional<TradeoffCurve> curve;
  if (gdp_mu.has_value()) {
    if (*gdp_mu == 0.0) {
      FDP_ASSIGN_OR_RETURN(curve, IdentityCurve(cfg.grid));
    } else {
      FDP_ASSIGN_OR_RETURN(curve, CurveOfGdp(*gdp_mu, cfg.grid));
    }
  } else {
    const auto& factors = composite->factors;
    const auto* single = factors.size() == 1
                             ? std::get_if<SubsampledGdpFactor>(&factors[0])
                             : nullptr;
    if (single == nullptr || single->multiplicity != 1) {
      return absl::InvalidArgumentError(
          "composed subsampled bounds have no tradeoff grid; use --format "
          "delta");
    }
    FDP_ASSIGN_OR_RETURN(const TradeoffCurve base,
                         CurveOfGdp(single->mu, cfg.grid));
    FDP_ASSIGN_OR_RETURN(curve, Subsample(base, single->p));
  }
  FDP_RETURN_IF_ERROR(ValidateCurve(curve->alphas(), curve->values()));
  WriteCurveCsv(*curve, os);
  return os.str();
}

absl::StatusOr<std::string> CmdConvert(const RunConfig& cfg) {
  nlohmann::ordered_json doc;
  doc["from"] = cfg.from;
  doc["to"] = cfg.to;
  const std::vector<double> deltas =
      cfg.deltas.empty() ? std::vector<double>{1e-5} : cfg.deltas;
  if (cfg.from == "gdp" && cfg.to == "eps-delta") {
    FDP_ASSIGN_OR_RETURN(const double mu, RequireValue(cfg.mu, "mu"));
    doc["mu"] = mu;
    doc["eps_at_delta"] = nlohmann::ordered_json::array();
    for (double delta : deltas) {
      FDP_ASSIGN_OR_RETURN(const double eps, GdpToEps(mu, delta));
      doc["eps_at_delta"].push_back({{"delta", delta}, {"eps", eps}});
    }
    doc["delta_at_eps"] = nlohmann::ordered_json::array();
    for (double eps : cfg.eps) {
      FDP_ASSIGN_OR_RETURN(const double delta, GdpToDelta(mu, eps));
      doc["delta_at_eps"].push_back({{"eps", eps}, {"delta", delta}});
    }
  } else if (cfg.from == "gdp" && cfg.to == "rdp") {
    FDP_ASSIGN_OR_RETURN(const double mu, RequireValue(cfg.mu, "mu"));
    FDP_ASSIGN_OR_RETURN(const double alpha, RequireValue(cfg.alpha, "alpha"));
    FDP_ASSIGN_OR_RETURN(const RdpPoint point, GdpToRdp(mu, alpha));
    doc["mu"] = mu;
    doc["alpha"] = point.alpha;
    doc["rdp_eps"] = point.eps;
  } else if (cfg.from == "rdp" && cfg.to == "eps-delta") {
    FDP_ASSIGN_OR_RETURN(const double rho, RequireValue(cfg.rho, "rho"));
    doc["rho"] = rho;
    doc["eps_at_delta"] = nlohmann::ordered_json::array();
    for (double delta : deltas) {
      FDP_ASSIGN_OR_RETURN(const RdpConversion conv,
                           RdpToEpsDeltaDetailed(rho, delta));
      doc["eps_at_delta"].push_back(
          {{"delta", delta},
           {"eps", conv.eps},
           {"alpha", conv.alpha},
           {"formula",
            conv.formula == RdpFormula::kClassic ? "classic" : "refined"}});
    }
  } else {
    return absl::InvalidArgumentError(absl::StrCat(
        "unsupported conversion '", cfg.from, "' -> '", cfg.to,
        "'; supported: gdp->eps-delta, gdp->rdp, rdp->eps-delta"));
  }
  return doc.dump(2) + "\n";
}

absl::StatusOr<std::string> CmdTable(const RunConfig& cfg) {
  std::ostringstream os;
  if (cfg.table == "all") {
    for (const std::string& name : TableNames()) {
      FDP_ASSIGN_OR_RETURN(const Table table, TableByName(name));
      os << "# " << name << "\n";
      WriteTableCsv(table, os);
    }
  } else {
    FDP_ASSIGN_OR_RETURN(const Table table, TableByName(cfg.table));
    WriteTableCsv(table, os);
  }
  return os.str();
}

struct CheckRow {
  std::string name;
  bool passed;
  double margin;
  double ci;
};

absl::StatusOr<CheckRow> VerifyWorstCase(const RunConfig& cfg) {
  SimSpec sim;
  sim.kind = SimKind::kGd;
  sim.eta = 0.1;
  sim.m = 1.0;
  sim.L = 1.0;
  sim.sigma = 5.0;
  sim.steps = 20;
  sim.trials = cfg.trials;
  sim.seed = cfg.seed;
  AlgoParams p;
  p.kind = AlgoKind::kGd;
  p.eta = sim.eta;
  p.m = sim.m;
  p.M = sim.m;
  p.L = sim.L;
  p.n = sim.n;
  p.sigma = sim.sigma;
  p.steps = sim.steps;
  FDP_ASSIGN_OR_RETURN(const double mu, BoundGdSc(p));
  FDP_ASSIGN_OR_RETURN(const SimSamples samples, Simulate(sim));
  FDP_ASSIGN_OR_RETURN(const EmpiricalCurve est,
                       EmpiricalTradeoff(samples.p, samples.q, 1));
  const double claimed = mu * cfg.tamper;
  const std::vector<double> alphas = CheckAlphas();
  const BandCheck band = CheckWithinBand(
      est, [claimed](double a) { return *GdpEval(claimed, a); }, alphas);
  return CheckRow{"gd-sc-worst-case", band.holds, band.margin,
                  est.ci_halfwidth};
}

absl::StatusOr<CheckRow> VerifyProjected(const RunConfig& cfg) {
  SimSpec sim;
  sim.kind = SimKind::kGd;
  sim.eta = 0.1;
  sim.m = 0.0;
  sim.L = 1.0;
  sim.sigma = 8.0;
  sim.steps = 40;
  sim.radius = 0.5;
  sim.trials = cfg.trials;
  sim.seed = cfg.seed + 1;
  AlgoParams p;
  p.kind = AlgoKind::kGd;
  p.constrained = true;
  p.eta = sim.eta;
  p.L = sim.L;
  p.n = sim.n;
  p.sigma = sim.sigma;
  p.D = 2.0 * *sim.radius;
  p.steps = sim.steps;
  FDP_ASSIGN_OR_RETURN(const double mu, BoundGdProj(p));
  FDP_ASSIGN_OR_RETURN(const SimSamples samples, Simulate(sim));
  EmpiricalOptions options;
  options.method = EmpiricalMethod::kHistogramLr;
  FDP_ASSIGN_OR_RETURN(const EmpiricalCurve est,
                       EmpiricalTradeoff(samples.p, samples.q, 1, options));
  const double claimed = mu * cfg.tamper;
  const std::vector<double> alphas = CheckAlphas();
  const BandCheck band = CheckAboveBand(
      est, [claimed](double a) { return *GdpEval(claimed, a); }, alphas);
  return CheckRow{"gd-proj-never-violated", band.holds, band.margin,
                  est.ci_halfwidth};
}

absl::StatusOr<std::vector<CheckRow>> VerifyGdpInf(const RunConfig& cfg) {
  std::vector<CheckRow> rows;
  FDP_ASSIGN_OR_RETURN(
      const GdpInfCheck point,
      CheckGdpInf(1.0, 1.0, PointMassLaw(1.0), cfg.trials, cfg.seed + 2));
  rows.push_back({"gaussian-shift-point-mass", point.passed, point.margin,
                  point.ci});
  FDP_ASSIGN_OR_RETURN(
      const GdpInfCheck uniform,
      CheckGdpInf(1.0, 1.0, UniformLaw(1.0), cfg.trials, cfg.seed + 3));
  rows.push_back({"gaussian-shift-uniform", uniform.passed && uniform.gap > 0.0,
                  uniform.margin, uniform.ci});
  return rows;
}

absl::StatusOr<CheckRow> VerifySchedule(const RunConfig& cfg) {
  constexpr double c = 0.5;
  constexpr int t = 5;
  FDP_ASSIGN_OR_RETURN(const ScheduleResult closed,
                       OptimalScSchedule(c, 1.0, t));
  const std::vector<double> s_seq(t, 1.0);
  FDP_ASSIGN_OR_RETURN(const BruteForceResult brute,
                       BruteForceSchedule(c, s_seq, 0.0, true, 50, cfg.seed));
  const double claimed = closed.sum_sq * cfg.tamper * cfg.tamper;
  const double rel = std::abs(brute.sum_sq - claimed) / claimed;
  return CheckRow{"schedule-brute-force", rel <= 1e-6, 1e-6 - rel, 0.0};
}

absl::StatusOr<std::string> CmdVerify(const RunConfig& cfg, bool* all_passed) {
  std::vector<CheckRow> rows;
  FDP_ASSIGN_OR_RETURN(CheckRow worst, VerifyWorstCase(cfg));
  rows.push_back(worst);
  FDP_ASSIGN_OR_RETURN(CheckRow proj, VerifyProjected(cfg));
  rows.push_back(proj);
  FDP_ASSIGN_OR_RETURN(std::vector<CheckRow> inf, VerifyGdpInf(cfg));
  rows.insert(rows.end(), inf.begin(), inf.end());
  FDP_ASSIGN_OR_RETURN(CheckRow sched, VerifySchedule(cfg));
  rows.push_back(sched);

  nlohmann::ordered_json doc;
  doc["seed"] = cfg.seed;
  doc["trials"] = cfg.trials;
  doc["tamper"] = cfg.tamper;
  doc["checks"] = nlohmann::ordered_json::array();
  double max_ci = 0.0;
  *all_passed = true;
  for (const CheckRow& row : rows) {
    doc["checks"].push_back({{"name", row.name},
                             {"passed", row.passed},
                             {"margin", row.margin},
                             {"ci", row.ci}});
    max_ci = std::max(max_ci, row.ci);
    *all_passed = *all_passed && row.passed;
  }
  doc["max_ci"] = max_ci;
  doc["passed"] = *all_passed;
  return doc.dump(2) + "\n";
}

absl::StatusOr<std::string> CmdSweepTau(const RunConfig& cfg) {
  if (cfg.params.kind != AlgoKind::kSgd) {
    return absl::InvalidArgumentError("sweep-tau needs kind 'sgd'");
  }
  if (!cfg.setting.has_value()) {
    return absl::InvalidArgumentError("sweep-tau needs --sc or --proj");
  }
  const std::vector<double> eps =
      cfg.eps.empty() ? std::vector<double>{0.5, 1.0, 2.0, 4.0} : cfg.eps;
  FDP_ASSIGN_OR_RETURN(const TauSweepResult sweep,
                       SweepSgdTau(cfg.params, eps, PrvSpec(cfg)));
  std::ostringstream os;
  os << "eps,delta,uncertainty,t_minus_tau\n";
  char buf[128];
  for (std::size_t i = 0; i < sweep.best.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%lld",
                  sweep.best[i].eps, sweep.best[i].delta,
                  sweep.best[i].uncertainty,
                  static_cast<long long>(sweep.argbest[i]));
    os << buf << "\n";
  }
  return os.str();
}

int ExitFor(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return kExitOk;
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kFailedPrecondition:
    case absl::StatusCode::kOutOfRange:
    case absl::StatusCode::kUnimplemented:
    case absl::StatusCode::kNotFound:
      return kExitValidation;
    case absl::StatusCode::kResourceExhausted:
      return kExitAccuracyBudget;
    default:
      return kExitInternal;
  }
}

absl::StatusOr<Json> LoadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    return absl::InvalidArgumentError(
        absl::StrCat("cannot read config '", path, "'"));
  }
  Json doc = Json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) {
    return absl::InvalidArgumentError(
        absl::StrCat("config '", path, "' is not valid JSON"));
  }
  return doc;
}

// Registers the optimizer flags on a subcommand; each writes into `flags`.
void AddAlgoOptions(CLI::App* sub, Json& flags) {
  sub->add_option_function<std::string>(
      "--kind", [&flags](const std::string& v) { flags["kind"] = v; },
      "gd, cgd or sgd");
  sub->add_flag_function(
      "--sc", [&flags](std::int64_t) { flags["setting"] = "sc"; },
      "strongly convex bound");
  sub->add_flag_function(
      "--proj", [&flags](std::int64_t) { flags["setting"] = "proj"; },
      "constrained convex bound");
  sub->add_flag_function(
      "--composition", [&flags](std::int64_t) { flags["composition"] = true; },
      "plain composition bound");
  for (const char* name : {"eta", "sigma", "L", "m", "M", "D", "leff", "mesh"}) {
    sub->add_option_function<double>(
        absl::StrCat("--", name),
        [&flags, name](const double& v) { flags[name] = v; });
  }
  for (const char* name : {"n", "b", "epochs", "steps", "tau"}) {
    sub->add_option_function<std::int64_t>(
        absl::StrCat("--", name),
        [&flags, name](const std::int64_t& v) { flags[name] = v; });
  }
  sub->add_option_function<std::vector<double>>(
      "--delta", [&flags](const std::vector<double>& v) { flags["delta"] = v; },
      "delta values for eps(delta)");
  sub->add_option_function<std::vector<double>>(
      "--eps", [&flags](const std::vector<double>& v) { flags["eps"] = v; },
      "eps values for delta(eps)");
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Convergent f-DP accountant for noisy gradient descent",
               "fdp_accountant"};
  app.require_subcommand(1);
  Json flags = Json::object();
  std::optional<std::string> config_path;
  app.add_option_function<std::string>(
      "--config", [&](const std::string& v) { config_path = v; },
      "JSON config; flags override its fields");
  app.add_option_function<std::string>(
      "--out", [&](const std::string& v) { flags["out"] = v; },
      "output file, '-' for stdout");
  app.add_option_function<std::uint64_t>(
      "--seed", [&](const std::uint64_t& v) { flags["seed"] = v; });
  app.add_option_function<int>(
      "--grid", [&](const int& v) { flags["grid"] = v; }, "alpha grid size");

  CLI::App* bound = app.add_subcommand("bound", "GDP or composite bound report");
  CLI::App* curve = app.add_subcommand("curve", "tradeoff or delta(eps) CSV");
  CLI::App* convert = app.add_subcommand("convert", "convert privacy notions");
  CLI::App* table = app.add_subcommand("table", "reference tables as CSV");
  CLI::App* verify = app.add_subcommand("verify", "Monte-Carlo verification");
  CLI::App* sweep = app.add_subcommand("sweep-tau", "best tau per eps for SGD");
  for (CLI::App* sub : {bound, curve, convert, table, verify, sweep}) {
    sub->fallthrough();
  }
  for (CLI::App* sub : {bound, curve, sweep}) AddAlgoOptions(sub, flags);

  curve->add_option_function<std::string>(
      "--type", [&](const std::string& v) { flags["type"] = v; },
      "identity, gdp, subsampled or bound");
  curve->add_option_function<std::string>(
      "--format", [&](const std::string& v) { flags["format"] = v; },
      "tradeoff or delta");
  for (const char* name : {"mu", "p", "eps-min", "eps-max"}) {
    std::string key = name;
    std::replace(key.begin(), key.end(), '-', '_');
    curve->add_option_function<double>(
        absl::StrCat("--", name),
        [&flags, key](const double& v) { flags[key] = v; });
  }
  curve->add_option_function<int>(
      "--eps-count", [&](const int& v) { flags["eps_count"] = v; });

  convert->add_option_function<std::string>(
      "--from", [&](const std::string& v) { flags["from"] = v; }, "gdp or rdp");
  convert->add_option_function<std::string>(
      "--to", [&](const std::string& v) { flags["to"] = v; },
      "eps-delta or rdp");
  for (const char* name : {"mu", "rho", "alpha"}) {
    convert->add_option_function<double>(
        absl::StrCat("--", name),
        [&flags, name](const double& v) { flags[name] = v; });
  }
  convert->add_option_function<std::vector<double>>(
      "--delta", [&](const std::vector<double>& v) { flags["delta"] = v; });
  convert->add_option_function<std::vector<double>>(
      "--eps", [&](const std::vector<double>& v) { flags["eps"] = v; });

  table->add_option_function<std::string>(
      "--name", [&](const std::string& v) { flags["table"] = v; },
      "gd-sc, cgd-sc, gd-proj, cgd-proj or all");

  verify->add_option_function<std::int64_t>(
      "--trials", [&](const std::int64_t& v) { flags["trials"] = v; });
  verify->add_option_function<double>(
      "--tamper", [&](const double& v) { flags["tamper"] = v; },
      "scale claimed bounds by this factor");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream os_out;
    std::ostringstream os_err;
    const int code = app.exit(e, os_out, os_err);
    out << os_out.str();
    err << os_err.str();
    return code == 0 ? kExitOk : kExitValidation;
  }

  Json merged = Json::object();
  if (config_path.has_value()) {
    absl::StatusOr<Json> file = LoadConfigFile(*config_path);
    if (!file.ok()) {
      err << "error: " << file.status().message() << "\n";
      return ExitFor(file.status());
    }
    merged = *std::move(file);
    if (!merged.is_object()) {
      err << "error: config must be a JSON object\n";
      return kExitValidation;
    }
  }
  merged.update(flags);
  absl::StatusOr<RunConfig> cfg = ParseConfig(merged);
  if (!cfg.ok()) {
    err << "error: " << cfg.status().message() << "\n";
    return ExitFor(cfg.status());
  }
  cfg->command = app.get_subcommands().front()->get_name();

  bool verified = true;
  absl::StatusOr<std::string> text;
  if (cfg->command == "bound") {
    text = CmdBound(*cfg);
  } else if (cfg->command == "curve") {
    text = CmdCurve(*cfg);
  } else if (cfg->command == "convert") {
    text = CmdConvert(*cfg);
  } else if (cfg->command == "table") {
    text = CmdTable(*cfg);
  } else if (cfg->command == "verify") {
    text = CmdVerify(*cfg, &verified);
  } else {
    text = CmdSweepTau(*cfg);
  }
  if (!text.ok()) {
    err << "error: " << text.status().message() << "\n";
    return ExitFor(text.status());
  }
  if (absl::Status st = Emit(*cfg, *text, out); !st.ok()) {
    err << "error: " << st.message() << "\n";
    return ExitFor(st);
  }
  return verified ? kExitOk : kExitVerification;
}

}  // namespace fdp
