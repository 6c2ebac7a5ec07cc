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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Tolerances and time budgets are fixed here.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "fdp/accountant.h"
#include "fdp/cli.h"
#include "fdp/conversions.h"
#include "fdp/numeric.h"
#include "fdp/oracle.h"
#include "fdp/prv.h"
#include "fdp/schedule.h"
#include "fdp/tables.h"
#include "fdp/tradeoff.h"
#include "reference_values.h"

namespace fdp {
namespace {

namespace ref = ::fdp::testing;

double Phi(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Collects failures; the first few are reported.
class Outcome {
 public:
  void Expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) {
      ++failures_;
      if (messages_.size() < 8) messages_.push_back(what);
    }
  }
  void Near(double got, double want, double tol, const std::string& what) {
    Expect(std::abs(got - want) <= tol,
           absl::StrFormat("%s: got %.9g want %.9g tol %.1e", what, got, want,
                           tol));
  }
  void Note(const std::string& s) { notes_.push_back(s); }

  bool ok() const { return failures_ == 0; }
  std::string Summary() const {
    std::string out = absl::StrCat(checks_ - failures_, "/", checks_,
                                   " checks");
    for (const auto& n : notes_) absl::StrAppend(&out, "; ", n);
    for (const auto& m : messages_) absl::StrAppend(&out, "\n    ", m);
    return out;
  }

 private:
  int checks_ = 0;
  int failures_ = 0;
  std::vector<std::string> messages_;
  std::vector<std::string> notes_;
};

// Thrown when a call the criterion depends on returns an error.
struct Aborted {
  std::string message;
};

template <typename T>
T Must(absl::StatusOr<T> v, Outcome& out, const std::string& what) {
  out.Expect(v.ok(), absl::StrCat(what, ": ", v.status().ToString()));
  if (!v.ok()) throw Aborted{absl::StrCat(what, ": ", v.status().ToString())};
  return *std::move(v);
}

AlgoParams GdWithContraction(double c, double leff, std::int64_t t) {
  AlgoParams p;
  p.kind = AlgoKind::kGd;
  p.eta = 1.0;
  p.m = 1.0 - c;
  p.M = 1.0 + c;
  p.L = leff;
  p.n = 1;
  p.sigma = 1.0;
  p.steps = t;
  return p;
}

// C1: strongly convex GD table and composition column.
void GdScTableCriterion(Outcome& out) {
  const Table t = Must(GdScTable(), out, "gd-sc table");
  out.Expect(t.rows.size() == 15, "gd-sc row count");
  if (t.rows.size() != 15) return;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 5; ++j) {
      const auto& row = t.rows[i * 5 + j];
      const std::string cell = absl::StrFormat("t=%g c=%g", row[0], row[1]);
      out.Near(row[2], ref::kGdScMu[i][j], ref::kTableTolerance, cell);
      out.Near(row[3], ref::kGdScComposition[i], ref::kTableTolerance,
               cell + " composition");
    }
  }
}

// C2: strongly convex CGD table; composition is L/(b sigma) sqrt(E).
void CgdScTableCriterion(Outcome& out) {
  const Table t = Must(CgdScTable(), out, "cgd-sc table");
  out.Expect(t.rows.size() == 27, "cgd-sc row count");
  if (t.rows.size() != 27) return;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        const auto& row = t.rows[(i * 3 + j) * 3 + k];
        const std::string cell =
            absl::StrFormat("l=%g c=%g E=%g", row[0], row[1], row[2]);
        out.Near(row[3], ref::kCgdScMu[i][j][k], ref::kTableTolerance, cell);
        out.Near(row[4], 0.2 * std::sqrt(row[2]), 1e-12,
                 cell + " composition formula");
        out.Near(row[4], ref::kCgdScComposition[k], ref::kTableTolerance,
                 cell + " composition");
      }
    }
  }
}

// C3: constrained tables.
void ProjTablesCriterion(Outcome& out) {
  const Table gd = Must(GdProjTable(), out, "gd-proj table");
  out.Expect(gd.rows.size() == 9, "gd-proj row count");
  for (int i = 0; i < 3 && gd.rows.size() == 9; ++i) {
    for (int j = 0; j < 3; ++j) {
      const auto& row = gd.rows[i * 3 + j];
      const std::string cell =
          absl::StrFormat("L/n=%g eta=%g", row[0], row[1]);
      out.Near(row[3], ref::kGdProjMu[i][j], ref::kTableTolerance, cell);
      out.Near(row[2], ref::kGdProjTStar[i][j], 0.0, cell + " t*");
    }
  }
  // Spot check straight through the API.
  AlgoParams p;
  p.kind = AlgoKind::kGd;
  p.constrained = true;
  p.eta = 0.1;
  p.n = 4;
  p.L = 2.0;
  p.D = 1.0;
  p.sigma = 8.0;
  p.steps = 1 << 20;
  const double mu = Must(BoundGdProj(p), out, "gd proj");
  out.Near(static_cast<double>(
               Must(CrossoverStep(mu, 0.5 / 8.0), out, "crossover")),
           80.0, 0.0, "crossover (0.5, 0.1)");

  const Table cgd = Must(CgdProjTable(), out, "cgd-proj table");
  out.Expect(cgd.rows.size() == 27, "cgd-proj row count");
  for (int i = 0; i < 3 && cgd.rows.size() == 27; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        const auto& row = cgd.rows[(i * 3 + j) * 3 + k];
        out.Near(row[4], ref::kCgdProjMu[i][j][k], ref::kTableTolerance,
                 absl::StrFormat("l=%g L/b=%g eta=%g", row[0], row[1],
                                 row[2]));
      }
    }
  }
  out.Note("E* columns not checked");
}

// C4: brute-force schedule search agrees with the closed form.
void ScheduleCriterion(Outcome& out) {
  double worst = 0.0;
  for (int ci = 1; ci <= 9; ++ci) {
    const double c = 0.1 * ci;
    for (int t = 2; t <= 8; ++t) {
      const std::vector<double> s(t, 1.0);
      const double closed =
          Must(OptimalScSchedule(c, 1.0, t), out, "closed form").sum_sq;
      const BruteForceResult brute = Must(
          BruteForceSchedule(c, s, 0.0, true, 64, 1000 * ci + t), out,
          "brute force");
      const double rel = std::abs(brute.sum_sq - closed) / closed;
      worst = std::max(worst, rel);
      out.Expect(rel <= 1e-6, absl::StrFormat("c=%.1f t=%d rel %.2e", c, t,
                                              rel));
    }
  }
  out.Note(absl::StrFormat("max rel err %.2e", worst));
}

// C5: the GD strongly convex bound equals the optimal schedule's meta mu.
void TheoremCriterion(Outcome& out) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> cdist(0.05, 0.995);
  std::uniform_real_distribution<double> ldist(0.1, 5.0);
  std::uniform_int_distribution<int> tdist(1, 2000);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double c = cdist(rng);
    AlgoParams p;
    p.kind = AlgoKind::kGd;
    p.eta = 0.2;
    p.m = (1.0 - c) / 0.2;
    p.M = p.m;
    p.L = ldist(rng);
    p.n = 1 + i % 17;
    p.sigma = 0.5 + ldist(rng);
    p.steps = tdist(rng);
    const double s = p.eta.value() * p.L.value() / p.n.value();
    const double bound = Must(BoundGdSc(p), out, "bound");
    const ScheduleResult sch = Must(
        OptimalScSchedule(Must(Contraction(p), out, "contraction"), s,
                          p.steps.value()),
        out, "schedule");
    const double meta =
        Must(MetaMu(sch.schedule, p.eta.value() * p.sigma.value()), out,
             "meta");
    const double rel = std::abs(bound - meta) / meta;
    worst = std::max(worst, rel);
    out.Expect(rel <= 1e-12, absl::StrFormat("case %d rel %.2e", i, rel));
  }
  out.Note(absl::StrFormat("max rel err %.2e", worst));
}

// Lower confidence bound on delta(eps) of the sampled pair: inside the band
// the true curve satisfies f(beta + ci) <= f_emp(beta) + ci.
double DeltaLowerBound(const EmpiricalCurve& est, double eps) {
  const double ci = est.ci_halfwidth;
  const double e = std::exp(eps);
  double best = 0.0;
  const auto alphas = est.curve.alphas();
  const auto values = est.curve.values();
  for (std::size_t i = 0; i < alphas.size() && alphas[i] <= 1.0 - ci; ++i) {
    best = std::max(best, 1.0 - e * (alphas[i] + ci) - values[i] - ci);
  }
  return best;
}

// C6 (continued): projected SGD has no closed-form curve, so the check runs
// in (eps, delta) space against the best tau of the composite bound.
void SgdProjOracle(Outcome& out) {
  SimSpec spec;
  spec.kind = SimKind::kSgd;
  spec.eta = 0.1;
  spec.m = 0.0;
  spec.L = 1.0;
  spec.sigma = 4.0;
  spec.n = 10;
  spec.b = 2;
  spec.steps = 30;
  spec.radius = 0.5;
  spec.trials = 1000000;
  spec.seed = 0;
  const SimSamples s = Must(Simulate(spec), out, "simulate sgd");
  AlgoParams p;
  p.kind = AlgoKind::kSgd;
  p.constrained = true;
  p.eta = spec.eta;
  p.L = spec.L;
  p.n = spec.n;
  p.b = spec.b;
  p.D = 1.0;
  p.sigma = spec.sigma;
  p.steps = spec.steps;
  const std::vector<double> eps = {0.0, 0.25, 0.5, 1.0};
  const TauSweepResult sweep = Must(SweepSgdTau(p, eps), out, "sweep");
  EmpiricalOptions opts;
  opts.method = EmpiricalMethod::kHistogramLr;
  const EmpiricalCurve est =
      Must(EmpiricalTradeoff(s.p, s.q, 1, opts), out, "histogram");
  double margin = 1.0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const double lcb = DeltaLowerBound(est, eps[i]);
    const double bound = sweep.best[i].delta + sweep.best[i].uncertainty;
    margin = std::min(margin, bound - lcb);
    if (i == 0) out.Note(absl::StrFormat("sgd-proj delta(0) bound %.4f empirical lcb %.4f", bound, lcb));
    out.Expect(lcb <= bound,
               absl::StrFormat("sgd projected eps=%g: empirical delta >= %.4f "
                               "above bound %.4f",
                               eps[i], lcb, bound));
  }
  out.Note(absl::StrFormat("sgd-proj delta margin %.5f", margin));
}

// C6: Monte-Carlo oracles.
void OracleCriterion(Outcome& out) {
  const auto alphas = CheckAlphas();
  {
    SimSpec spec;
    spec.eta = 0.1;
    spec.m = 1.0;
    spec.L = 1.0;
    spec.sigma = 2.0;
    spec.steps = 20;
    spec.trials = 1000000;
    spec.seed = 0;
    const SimSamples s = Must(Simulate(spec), out, "simulate");
    AlgoParams p;
    p.kind = AlgoKind::kGd;
    p.eta = 0.1;
    p.m = 1.0;
    p.M = 1.0;
    p.L = 1.0;
    p.n = 1;
    p.sigma = 2.0;
    p.steps = 20;
    const double mu = Must(BoundGdSc(p), out, "bound");
    const EmpiricalCurve est =
        Must(EmpiricalTradeoff(s.p, s.q, 1), out, "empirical");
    out.Expect(est.ci_halfwidth <= 0.005,
               absl::StrFormat("ci %.4f", est.ci_halfwidth));
    const BandCheck band = CheckWithinBand(
        est, [mu](double a) { return *GdpEval(mu, a); }, alphas);
    out.Expect(band.holds, absl::StrFormat("worst-case pair margin %.2e at %g",
                                           band.margin, band.worst_alpha));
    out.Note(absl::StrFormat("mu %.4f ci %.5f margin %.5f", mu,
                             est.ci_halfwidth, band.margin));
  }
  // Projected 1-D runs, GD and CGD.
  struct ProjCase {
    SimKind kind;
    std::int64_t n, b, steps;
  };
  for (const ProjCase pc : {ProjCase{SimKind::kGd, 4, 4, 40},
                            ProjCase{SimKind::kCgd, 4, 1, 40}}) {
    SimSpec spec;
    spec.kind = pc.kind;
    spec.eta = 0.1;
    spec.m = 0.0;
    spec.L = 1.0;
    spec.sigma = pc.kind == SimKind::kGd ? 2.0 : 4.0;
    spec.n = pc.n;
    spec.b = pc.b;
    spec.steps = pc.steps;
    spec.radius = 0.5;
    spec.trials = 1000000;
    spec.seed = 0;
    const SimSamples s = Must(Simulate(spec), out, "simulate proj");
    AlgoParams p;
    p.kind = pc.kind == SimKind::kGd ? AlgoKind::kGd : AlgoKind::kCgd;
    p.constrained = true;
    p.eta = spec.eta;
    p.L = spec.L;
    p.n = spec.n;
    p.b = spec.b;
    p.D = 1.0;
    p.sigma = spec.sigma;
    double mu;
    if (pc.kind == SimKind::kGd) {
      p.steps = pc.steps;
      mu = Must(BoundGdProj(p), out, "gd proj bound");
    } else {
      p.epochs = pc.steps / (pc.n / pc.b);
      mu = Must(BoundCgdProj(p), out, "cgd proj bound");
    }
    EmpiricalOptions opts;
    opts.method = EmpiricalMethod::kHistogramLr;
    const EmpiricalCurve est =
        Must(EmpiricalTradeoff(s.p, s.q, 1, opts), out, "histogram");
    const BandCheck band = CheckAboveBand(
        est, [mu](double a) { return *GdpEval(mu, a); }, alphas);
    const char* name = pc.kind == SimKind::kGd ? "gd" : "cgd";
    out.Expect(band.holds, absl::StrFormat("%s projected margin %.2e at %g",
                                           name, band.margin,
                                           band.worst_alpha));
    out.Note(absl::StrFormat("%s-proj mu %.4f margin %.5f", name, mu,
                             band.margin));
  }
  SgdProjOracle(out);
}

// C7: subsampling operator.
void SubsamplingCriterion(Outcome& out) {
  for (double mu : {0.5, 1.0, 2.5}) {
    const TradeoffCurve g = Must(CurveOfGdp(mu), out, "gdp curve");
    const TradeoffCurve c1 = Must(Subsample(g, 1.0), out, "C_1");
    out.Expect(CurveGeq(c1, g).holds && CurveGeq(g, c1).holds,
               absl::StrFormat("C_1(G(%g)) != G", mu));
    const TradeoffCurve c0 = Must(Subsample(g, 0.0), out, "C_0");
    bool identity = true;
    for (std::size_t i = 0; i < c0.size(); ++i) {
      identity = identity && c0.values()[i] == 1.0 - c0.alphas()[i];
    }
    out.Expect(identity, absl::StrFormat("C_0(G(%g)) != Id", mu));
    for (double p : {0.05, 0.25, 0.7}) {
      const TradeoffCurve c = Must(Subsample(g, p), out, "C_p");
      const TradeoffCurve inv = InvertCurve(c);
      double asym = 0.0;
      double above_fp = -1.0;
      for (std::size_t i = 0; i < c.size(); ++i) {
        asym = std::max(asym, std::abs(c.values()[i] - inv.values()[i]));
        const double a = c.alphas()[i];
        const double fp = p * g.values()[i] + (1.0 - p) * (1.0 - a);
        above_fp = std::max(above_fp, c.values()[i] - fp);
      }
      out.Expect(asym <= 2.0 * c.mesh(),
                 absl::StrFormat("asymmetry %.2e > 2 mesh (mu %g p %g)", asym,
                                 mu, p));
      out.Expect(above_fp <= 1e-12,
                 absl::StrFormat("C_p above f_p by %.2e", above_fp));
    }
  }
  const double p = 0.25, mu = 2.5;
  const TradeoffCurve c =
      Must(Subsample(Must(CurveOfGdp(mu), out, "gdp"), p), out, "C_p");
  const double identity = (1.0 + p) * Phi(-mu / 2.0) + (1.0 - p) * Phi(mu / 2.0);
  const double a_star = Phi(-mu / 2.0);
  const double b_star = identity - a_star;
  double worst = 0.0;
  for (int i = 1; i < 50; ++i) {
    const double a = a_star + (b_star - a_star) * i / 50.0;
    worst = std::max(worst, std::abs(a + c.Evaluate(a) - identity));
  }
  out.Expect(worst <= 1e-6, absl::StrFormat("tangency err %.2e", worst));
  out.Note(absl::StrFormat("tangency err %.1e", worst));
}

// Smallest mu whose GDP curve has delta(eps) >= delta.
double MuEquivalent(double eps, double delta) {
  return Bisect(
      [eps, delta](double mu) { return *GdpToDelta(mu, eps) - delta; }, 1e-9,
      50.0, 1e-12);
}

// C8: PRV accountant.
void PrvCriterion(Outcome& out) {
  const std::vector<double> eps = {0.0, 1.0, 2.0, 5.0};
  const auto rows = Must(
      EvaluateComposite(CompositeBound{{GdpFactor{3.0}, GdpFactor{4.0}}}, eps),
      out, "gdp pair");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.Near(rows[i].delta, *GdpToDelta(5.0, eps[i]), 1e-4,
             absl::StrFormat("[G3,G4] eps=%g", eps[i]));
  }

  const std::vector<double> eps1 = {0.0, 0.5, 1.0};
  const auto single = Must(
      EvaluateComposite(CompositeBound{{SubsampledGdpFactor{1.0, 0.1, 1}}},
                        eps1),
      out, "subsampled t=1");
  const TradeoffCurve curve = Must(
      Subsample(Must(CurveOfGdp(1.0), out, "gdp"), 0.1), out, "C_p");
  for (std::size_t i = 0; i < single.size(); ++i) {
    out.Near(single[i].delta, CurveToDelta(curve, eps1[i]), 1e-4,
             absl::StrFormat("t=1 eps=%g", eps1[i]));
  }

  const double clt = Must(CltSubsampled(1.0, 0.01, 1e4), out, "clt");
  const std::vector<double> eps2 = {0.0, 0.5, 1.0, 2.0, 3.0};
  const auto many = Must(
      EvaluateComposite(CompositeBound{{SubsampledGdpFactor{1.0, 0.01, 10000}}},
                        eps2),
      out, "10^4 composition");
  double worst = 0.0;
  for (std::size_t i = 0; i < many.size(); ++i) {
    const double mu_eq = MuEquivalent(eps2[i], many[i].delta);
    worst = std::max(worst, std::abs(mu_eq - clt));
    out.Near(mu_eq, clt, 0.02, absl::StrFormat("mu-equivalent eps=%g",
                                               eps2[i]));
  }
  out.Note(absl::StrFormat("CLT mu %.5f, max mu-equivalent gap %.4f", clt,
                           worst));
  // Context only: the gap at fixed p * sqrt(t) = 1 as p shrinks.
  for (double p : {0.005, 0.0025}) {
    const auto t = static_cast<std::int64_t>(std::llround(1.0 / (p * p)));
    const auto r = Must(
        EvaluateComposite(CompositeBound{{SubsampledGdpFactor{1.0, p, t}}},
                          std::vector<double>{0.0}),
        out, "limit sequence");
    out.Note(absl::StrFormat("p=%g gap %.4f", p,
                             std::abs(MuEquivalent(0.0, r[0].delta) - clt)));
  }
}

// C9: conversions.
void ConversionsCriterion(Outcome& out) {
  const double d0 = Must(GdpToDelta(1.0, 0.0), out, "delta(1,0)");
  const double d1 = Must(GdpToDelta(1.0, 1.0), out, "delta(1,1)");
  out.Near(2.0 * Phi(0.5) - 1.0, 0.38292, 1e-5, "independent delta(1,0)");
  out.Near(Phi(-0.5) - std::exp(1.0) * Phi(-1.5), 0.12693, 1e-5,
           "independent delta(1,1)");
  out.Near(d0, 0.38292, 1e-5, "delta(1,0)");
  out.Near(d1, 0.12693, 1e-5, "delta(1,1)");
  double worst = 0.0;
  for (double mu = 0.1; mu <= 10.0 + 1e-9; mu *= 1.25) {
    for (double e : {0.05, 0.5, 1.0, 3.0, 8.0}) {
      const double delta = *GdpToDelta(mu, e);
      if (delta < 1e-300) continue;
      const double back = Must(GdpToEps(mu, delta), out, "eps");
      worst = std::max(worst, std::abs(back - e));
      out.Near(back, e, 1e-9, absl::StrFormat("round trip mu=%g eps=%g", mu,
                                              e));
    }
  }
  // c = 0.95 with L/(n sigma) = 0.1 from eta = 0.05, m = 1, M = 10.
  for (int t = 10; t <= 160; t += 10) {
    AlgoParams p;
    p.kind = AlgoKind::kGd;
    p.eta = 0.05;
    p.m = 1.0;
    p.M = 10.0;
    p.L = 0.1;
    p.n = 1;
    p.sigma = 1.0;
    p.steps = t;
    const double mu = Must(BoundGdSc(p), out, "bound");
    const double fdp_eps = Must(GdpToEps(mu, 1e-5), out, "f-DP eps");
    const double rho = Must(GdpToRdp(mu, 2.0), out, "rdp").eps / 2.0;
    const double rdp_eps = Must(RdpToEpsDelta(rho, 1e-5), out, "rdp eps");
    out.Expect(fdp_eps < rdp_eps,
               absl::StrFormat("t=%d f-DP eps %.4f not below RDP %.4f", t,
                               fdp_eps, rdp_eps));
  }
  out.Note(absl::StrFormat("round trip max err %.1e", worst));
}

// C10: exponential mechanism and Langevin.
void ExpMechCriterion(Outcome& out) {
  const double thr = ExpMechPureDpThreshold();
  out.Expect(thr >= 0.675 && thr <= 0.678,
             absl::StrFormat("threshold %.5f", thr));
  for (double eta : {0.01, 0.1, 0.5}) {
    const double lmc = Must(LmcSc(2.0, 1.5, eta, 1000000), out, "lmc");
    const double stat = Must(LmcStationarySc(2.0, 1.5, eta), out, "stationary");
    out.Near(lmc, stat, 1e-9, absl::StrFormat("lmc eta=%g", eta));
  }
  const double limit = Must(LmcStationarySc(2.0, 1.5, 0.0), out, "eta->0");
  out.Near(limit, 2.0 / std::sqrt(1.5), 1e-9, "eta -> 0 limit");
  out.Near(Must(LmcStationarySc(2.0, 1.5, 1e-12), out, "small eta"),
           2.0 / std::sqrt(1.5), 1e-9, "small eta");
  out.Note(absl::StrFormat("threshold %.5f", thr));
}

void CheckCurve(const TradeoffCurve& c, Outcome& out, const std::string& what) {
  const absl::Status st = ValidateCurve(c.alphas(), c.values());
  out.Expect(st.ok(), absl::StrCat(what, ": ", st.ToString()));
}

absl::StatusOr<TradeoffCurve> CliCurve(std::vector<std::string> args) {
  args.insert(args.begin(), {"fdp_accountant", "curve"});
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream os, err;
  const int code =
      RunCli(static_cast<int>(argv.size()), argv.data(), os, err);
  if (code != 0) return absl::InternalError(err.str());
  std::istringstream in(os.str());
  return ReadCurveCsv(in);
}

// C11: monotonicity, limits and curve invariants.
void PropertiesCriterion(Outcome& out) {
  for (double c : {0.5, 0.9, 0.99}) {
    double prev = 0.0;
    double last = 0.0;
    for (std::int64_t t = 1; t <= 5000; t = t < 10 ? t + 1 : t * 11 / 10) {
      const double mu =
          Must(BoundGdSc(GdWithContraction(c, 0.3, t)), out, "gd sc");
      out.Expect(mu >= prev, absl::StrFormat("c=%g decreases at t=%lld", c,
                                             static_cast<long long>(t)));
      prev = mu;
      last = mu;
    }
    const double limit = std::sqrt((1.0 + c) / (1.0 - c)) * 0.3;
    out.Expect(last <= limit * (1 + 1e-12), "exceeds limit");
    const double far =
        Must(BoundGdSc(GdWithContraction(c, 0.3, 1000000)), out, "far");
    out.Near(far, limit, 1e-9 * limit, absl::StrFormat("limit c=%g", c));
  }
  for (double c : {0.5, 0.98}) {
    for (std::int64_t l : {1, 4, 10}) {
      AlgoParams p = GdWithContraction(c, 0.7, 1);
      p.kind = AlgoKind::kCgd;
      p.steps.reset();
      p.b = 2;
      p.n = 2 * l;
      p.sigma = 1.5;
      p.epochs = 1;
      out.Near(Must(BoundCgdSc(p), out, "cgd"), 0.7 / (2 * 1.5), 1e-12,
               absl::StrFormat("cgd E=1 l=%lld", static_cast<long long>(l)));
    }
  }

  // Every curve producer, including the command-line path.
  for (double mu : {0.0, 0.3, 1.0, 4.0, 20.0}) {
    CheckCurve(Must(CurveOfGdp(mu), out, "gdp"), out, "gdp");
    for (double p : {0.01, 0.3, 1.0}) {
      const TradeoffCurve c =
          Must(Subsample(Must(CurveOfGdp(mu), out, "gdp"), p), out, "C_p");
      CheckCurve(c, out, "subsample");
      CheckCurve(InvertCurve(c), out, "inverse");
      CheckCurve(Must(MixtureGaussianTradeoff(p, mu), out, "mixture"), out,
                 "mixture");
    }
  }
  CheckCurve(Must(IdentityCurve(), out, "identity"), out, "identity");
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<CurvePoint> pts = {{0.0, 1.0}, {1.0, 0.0}};
    for (int i = 0; i < 30; ++i) {
      const double a = u(rng);
      pts.push_back({a, (1.0 - a) * u(rng)});
    }
    CheckCurve(Must(Convexify(pts), out, "convexify"), out, "convexify");
  }
  std::normal_distribution<double> z;
  std::vector<double> a(20000), b(20000);
  for (double& x : a) x = z(rng);
  for (double& x : b) x = 0.8 + z(rng);
  CheckCurve(Must(EmpiricalTradeoff(a, b, 1), out, "empirical").curve, out,
             "empirical");
  EmpiricalOptions hist;
  hist.method = EmpiricalMethod::kHistogramLr;
  CheckCurve(Must(EmpiricalTradeoff(a, b, 1, hist), out, "histogram").curve,
             out, "histogram");
  CheckCurve(Must(experimental::ConjecturedSubsampledTradeoff(0.2, 1.0), out,
                  "conjectured"),
             out, "conjectured");
  for (const std::vector<std::string>& args :
       std::vector<std::vector<std::string>>{
           {"--type", "identity"},
           {"--type", "gdp", "--mu", "0.961"},
           {"--type", "subsampled", "--mu", "2", "--p", "0.1"},
           {"--type", "bound", "--kind", "gd", "--sc", "--eta", "0.05", "--m",
            "1", "--M", "10", "--steps", "160", "--leff", "0.1"}}) {
    CheckCurve(Must(CliCurve(args), out, "cli curve"), out,
               absl::StrCat("cli ", args[1]));
  }
}

struct Criterion {
  const char* id;
  const char* title;
  double budget_seconds;
  std::function<void(Outcome&)> run;
};

}  // namespace
}  // namespace fdp

int main() {
  using fdp::Criterion;
  const std::vector<Criterion> criteria = {
      {"C1", "GD strongly convex table", 1.0, fdp::GdScTableCriterion},
      {"C2", "CGD strongly convex table", 1.0, fdp::CgdScTableCriterion},
      {"C3", "constrained tables", 60.0, fdp::ProjTablesCriterion},
      {"C4", "schedule optimality", 120.0, fdp::ScheduleCriterion},
      {"C5", "bound equals schedule meta-mu", 60.0, fdp::TheoremCriterion},
      {"C6", "Monte-Carlo oracle", 300.0, fdp::OracleCriterion},
      {"C7", "subsampling operator", 60.0, fdp::SubsamplingCriterion},
      {"C8", "PRV accountant", 60.0, fdp::PrvCriterion},
      {"C9", "conversions", 60.0, fdp::ConversionsCriterion},
      {"C10", "exponential mechanism", 60.0, fdp::ExpMechCriterion},
      {"C11", "monotonicity and curve invariants", 120.0,
       fdp::PropertiesCriterion},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    fdp::Outcome outcome;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(outcome);
    } catch (const fdp::Aborted& e) {
      outcome.Note(absl::StrCat("aborted: ", e.message));
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    const bool in_time = secs <= c.budget_seconds;
    const bool pass = outcome.ok() && in_time;
    if (!pass) ++failed;
    std::printf("%-3s %s  %s  [%.2fs / %.0fs budget%s]  %s\n", c.id,
                pass ? "PASS" : "FAIL", c.title, secs, c.budget_seconds,
                in_time ? "" : ", over budget", outcome.Summary().c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
