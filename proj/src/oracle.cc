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

#include "fdp/oracle.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "fdp/kernels.h"
#include "fdp/status_macros.h"
#include "fdp/tradeoff.h"
#include "parallel.h"

namespace fdp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::mt19937_64 DerivedEngine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

// Uniform DKW half-width for one empirical CDF at failure probability a.
double DkwHalfWidth(std::size_t n, double a) {
  return std::sqrt(std::log(2.0 / a) / (2.0 * static_cast<double>(n)));
}

std::vector<double> Statistics(std::span<const double> samples, int dimension,
                               const EmpiricalOptions& options) {
  const std::size_t rows = samples.size() / dimension;
  std::vector<double> out(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto row = samples.subspan(i * dimension, dimension);
    out[i] = options.statistic ? options.statistic(row) : row[0];
  }
  return out;
}

// ROC points of the tests {stat > threshold} over every distinct threshold.
std::vector<CurvePoint> ThresholdRoc(std::vector<double> sp,
                                     std::vector<double> sq) {
  std::sort(sp.begin(), sp.end(), std::greater<>());
  std::sort(sq.begin(), sq.end(), std::greater<>());
  const double np = static_cast<double>(sp.size());
  const double nq = static_cast<double>(sq.size());
  std::vector<CurvePoint> points;
  points.reserve(sp.size() + sq.size() + 1);
  points.push_back({0.0, 1.0});
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < sp.size() || j < sq.size()) {
    const double v = std::max(i < sp.size() ? sp[i] : -kInf,
                              j < sq.size() ? sq[j] : -kInf);
    while (i < sp.size() && sp[i] == v) ++i;
    while (j < sq.size() && sq[j] == v) ++j;
    points.push_back({static_cast<double>(i) / np,
                      1.0 - static_cast<double>(j) / nq});
  }
  return points;
}

double Quantile(std::vector<double>& v, double q) {
  const std::size_t k = static_cast<std::size_t>(q * (v.size() - 1));
  std::nth_element(v.begin(), v.begin() + k, v.end());
  return v[k];
}

// Even-indexed samples fix the bin edges and the likelihood-ratio order of
// the bins; odd-indexed samples then score that fixed family of tests.
// Ranking and scoring on the same draws would trace the noise in the bin
// counts and bias the curve downward.
std::vector<CurvePoint> HistogramRoc(std::span<const double> sp,
                                     std::span<const double> sq, int bins) {
  std::vector<double> train_p, train_q, eval_p, eval_q;
  for (std::size_t i = 0; i < sp.size(); ++i) {
    (i % 2 == 0 ? train_p : eval_p).push_back(sp[i]);
  }
  for (std::size_t i = 0; i < sq.size(); ++i) {
    (i % 2 == 0 ? train_q : eval_q).push_back(sq[i]);
  }
  std::vector<double> pooled(train_p);
  pooled.insert(pooled.end(), train_q.begin(), train_q.end());
  const auto [lo_it, hi_it] = std::minmax_element(pooled.begin(), pooled.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (bins <= 0) {
    const double iqr = Quantile(pooled, 0.75) - Quantile(pooled, 0.25);
    const double width =
        2.0 * iqr / std::cbrt(static_cast<double>(pooled.size()));
    const double fd = width > 0.0 ? std::ceil((hi - lo) / width) : 64.0;
    bins = static_cast<int>(std::clamp(fd, 64.0, 65536.0));
  }
  const double scale = hi > lo ? bins / (hi - lo) : 0.0;
  auto index = [&](double x) {
    const double k = std::floor((x - lo) * scale);
    return static_cast<int>(std::clamp(k, 0.0, bins - 1.0));
  };
  auto count = [&](const std::vector<double>& xs) {
    std::vector<double> c(bins, 0.0);
    for (double x : xs) c[index(x)] += 1.0;
    return c;
  };
  // Half a count of smoothing keeps empty training bins orderable.
  std::vector<double> rp = count(train_p);
  std::vector<double> rq = count(train_q);
  for (double& v : rp) v += 0.5;
  for (double& v : rq) v += 0.5;
  std::vector<int> order(bins);
  std::iota(order.begin(), order.end(), 0);
  // Largest dQ/dP first.
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return rq[a] * rp[b] > rq[b] * rp[a];
  });
  const std::vector<double> cp = count(eval_p);
  const std::vector<double> cq = count(eval_q);
  const double np = static_cast<double>(eval_p.size());
  const double nq = static_cast<double>(eval_q.size());
  std::vector<CurvePoint> points;
  points.reserve(order.size() + 1);
  points.push_back({0.0, 1.0});
  double taken_p = 0.0;
  double taken_q = 0.0;
  for (int k : order) {
    if (cp[k] == 0.0 && cq[k] == 0.0) continue;
    taken_p += cp[k];
    taken_q += cq[k];
    points.push_back({taken_p / np, 1.0 - taken_q / nq});
  }
  points.back() = {1.0, 0.0};
  return points;
}

double ObjectiveSumSq(double c, std::span<const double> s_seq, double z0,
                      std::span<const double> lambdas) {
  double z = z0;
  double total = 0.0;
  for (std::size_t k = 0; k < s_seq.size(); ++k) {
    const double base = c * z + s_seq[k];
    const double a = lambdas[k] * base;
    z = (1.0 - lambdas[k]) * base;
    total += a * a;
  }
  return total;
}

}  // namespace

absl::StatusOr<double> WorstCaseGdScMu(double c, double s, double sigma,
                                       std::int64_t t) {
  if (!(c > 0.0 && c < 1.0)) {
    return absl::InvalidArgumentError("worst-case pair needs 0 < c < 1");
  }
  if (!(s >= 0.0) || !(sigma > 0.0) || t < 1) {
    return absl::InvalidArgumentError("need s >= 0, sigma > 0, t >= 1");
  }
  const double td = static_cast<double>(t);
  const double mean = (1.0 - std::pow(c, td)) / (1.0 - c) * s;
  const double var = (1.0 - std::pow(c, 2.0 * td)) / (1.0 - c * c) *
                     sigma * sigma;
  return mean / std::sqrt(var);
}

absl::Status ValidateSimSpec(const SimSpec& spec) {
  if (spec.dimension < 1) {
    return absl::InvalidArgumentError("dimension must be >= 1");
  }
  if (!(spec.eta > 0.0) || !(spec.m >= 0.0) || !(spec.L >= 0.0) ||
      !(spec.sigma > 0.0)) {
    return absl::InvalidArgumentError(
        "need eta > 0, m >= 0, L >= 0, sigma > 0");
  }
  if (spec.n < 1 || spec.b < 1 || spec.b > spec.n) {
    return absl::InvalidArgumentError("need 1 <= b <= n");
  }
  if (spec.kind == SimKind::kCgd && spec.n % spec.b != 0) {
    return absl::InvalidArgumentError(
        "cyclic batches need n to be a multiple of b");
  }
  if (spec.index < 0 || spec.index >= spec.n) {
    return absl::InvalidArgumentError("index must lie in [0, n)");
  }
  if (spec.steps < 1 || spec.trials < 1 || spec.chunks < 1) {
    return absl::InvalidArgumentError("need steps, trials, chunks >= 1");
  }
  if (spec.radius.has_value()) {
    if (!(*spec.radius > 0.0)) {
      return absl::InvalidArgumentError("radius must be positive");
    }
    if (spec.dimension != 1) {
      return absl::InvalidArgumentError(
          "projected simulation supports dimension 1 only");
    }
    if (std::abs(spec.x0) > *spec.radius) {
      return absl::InvalidArgumentError("x0 lies outside the constraint set");
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<SimSamples> Simulate(const SimSpec& spec) {
  FDP_RETURN_IF_ERROR(ValidateSimSpec(spec));
  const int d = spec.dimension;
  const double c = 1.0 - spec.eta * spec.m;
  const double scale = spec.eta * spec.sigma;
  const double lo = spec.radius ? -*spec.radius : -kInf;
  const double hi = spec.radius ? *spec.radius : kInf;
  const std::int64_t batch = spec.kind == SimKind::kGd ? spec.n : spec.b;
  const double shift = spec.eta * spec.L / static_cast<double>(batch);
  const std::int64_t l = spec.n / spec.b;
  const std::int64_t target_batch = spec.index / spec.b;
  const double include_rate =
      static_cast<double>(spec.b) / static_cast<double>(spec.n);

  SimSamples out;
  out.dimension = d;
  out.p.assign(spec.trials * d, 0.0);
  out.q.assign(spec.trials * d, 0.0);
  const std::int64_t chunks = std::min<std::int64_t>(spec.chunks, spec.trials);
  const auto& kt = kernels::Active();

  internal::ParallelFor(chunks, [&](std::int64_t chunk) {
    const std::int64_t begin = spec.trials * chunk / chunks;
    const std::int64_t end = spec.trials * (chunk + 1) / chunks;
    const std::size_t rows = static_cast<std::size_t>(end - begin);
    std::mt19937_64 eng = DerivedEngine(spec.seed, chunk);
    std::normal_distribution<double> normal;
    std::bernoulli_distribution coin(include_rate);
    // Coordinate-major state so each coordinate is one contiguous lane.
    std::vector<double> xp(rows * d, 0.0);
    std::vector<double> xq(rows * d, 0.0);
    std::fill(xp.begin(), xp.begin() + rows, spec.x0);
    std::fill(xq.begin(), xq.begin() + rows, spec.x0);
    std::vector<double> noise_p(rows);
    std::vector<double> noise_q(rows);
    std::vector<double> ind_q;
    if (spec.kind == SimKind::kSgd) ind_q.resize(rows);
    for (std::int64_t k = 0; k < spec.steps; ++k) {
      double step_shift = shift;
      if (spec.kind == SimKind::kCgd && k % l != target_batch) step_shift = 0.0;
      if (spec.kind == SimKind::kSgd) {
        for (std::size_t r = 0; r < rows; ++r) ind_q[r] = coin(eng) ? 1.0 : 0.0;
      }
      for (int axis = 0; axis < d; ++axis) {
        for (double& z : noise_p) z = normal(eng);
        if (spec.coupled) {
          noise_q = noise_p;
        } else {
          for (double& z : noise_q) z = normal(eng);
        }
        std::span<double> lane_p(xp.data() + axis * rows, rows);
        std::span<double> lane_q(xq.data() + axis * rows, rows);
        kt.ar1_step(lane_p, c, 0.0, {}, scale, noise_p, lo, hi);
        kt.ar1_step(lane_q, c, axis == 0 ? step_shift : 0.0,
                    ind_q, scale, noise_q, lo, hi);
      }
    }
    for (std::size_t r = 0; r < rows; ++r) {
      for (int axis = 0; axis < d; ++axis) {
        out.p[(begin + r) * d + axis] = xp[axis * rows + r];
        out.q[(begin + r) * d + axis] = xq[axis * rows + r];
      }
    }
  });
  return out;
}

void WriteSimCsv(const SimSamples& samples, std::ostream& out) {
  out << "trial,x_final,process\n";
  char buf[64];
  const std::int64_t n = samples.trials();
  for (const auto& [values, label] :
       {std::pair{&samples.p, "p"}, std::pair{&samples.q, "q"}}) {
    for (std::int64_t i = 0; i < n; ++i) {
      std::snprintf(buf, sizeof(buf), "%lld,%.17g,%s",
                    static_cast<long long>(i),
                    (*values)[i * samples.dimension], label);
      out << buf << "\n";
    }
  }
}

absl::StatusOr<EmpiricalCurve> EmpiricalTradeoff(
    std::span<const double> p_samples, std::span<const double> q_samples,
    int dimension, const EmpiricalOptions& options) {
  if (dimension < 1) return absl::InvalidArgumentError("dimension must be >= 1");
  if (p_samples.empty() || q_samples.empty() ||
      p_samples.size() % dimension != 0 || q_samples.size() % dimension != 0) {
    return absl::InvalidArgumentError(
        "sample sets must be nonempty whole rows");
  }
  if (!(options.confidence > 0.0 && options.confidence < 1.0)) {
    return absl::InvalidArgumentError("confidence must lie in (0, 1)");
  }
  const std::size_t np = p_samples.size() / dimension;
  const std::size_t nq = q_samples.size() / dimension;
  const double fail = (1.0 - options.confidence) / 2.0;
  double ci = std::max(DkwHalfWidth(np, fail), DkwHalfWidth(nq, fail));

  std::vector<CurvePoint> points;
  if (options.method == EmpiricalMethod::kExactLr) {
    std::vector<double> sp = Statistics(p_samples, dimension, options);
    std::vector<double> sq = Statistics(q_samples, dimension, options);
    const double mp = std::accumulate(sp.begin(), sp.end(), 0.0) / np;
    const double mq = std::accumulate(sq.begin(), sq.end(), 0.0) / nq;
    if (mq < mp) {
      for (double& v : sp) v = -v;
      for (double& v : sq) v = -v;
    }
    points = ThresholdRoc(std::move(sp), std::move(sq));
  } else {
    if (dimension != 1) {
      return absl::UnimplementedError(
          "histogram likelihood ratio supports dimension 1 only");
    }
    if (np < 2 || nq < 2) {
      return absl::InvalidArgumentError(
          "histogram likelihood ratio needs at least two samples each");
    }
    points = HistogramRoc(p_samples, q_samples, options.bins);
    // Only the held-out half is scored; the bin rule is a heuristic, hence
    // the extra factor.
    ci = 1.5 * std::max(DkwHalfWidth(np / 2, fail), DkwHalfWidth(nq / 2, fail));
  }
  FDP_ASSIGN_OR_RETURN(TradeoffCurve curve, Convexify(points));
  return EmpiricalCurve{std::move(curve), ci, options.method};
}

void WriteEmpiricalCsv(const EmpiricalCurve& curve, std::ostream& out) {
  out << "alpha,f,ci\n";
  char buf[96];
  const auto alphas = curve.curve.alphas();
  const auto values = curve.curve.values();
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g", alphas[i], values[i],
                  curve.ci_halfwidth);
    out << buf << "\n";
  }
}

std::vector<double> CheckAlphas() {
  std::vector<double> out;
  for (int i = 1; i <= 19; ++i) out.push_back(0.05 * i);
  return out;
}

BandCheck CheckWithinBand(const EmpiricalCurve& est,
                          const std::function<double(double)>& reference,
                          std::span<const double> alphas) {
  const double ci = est.ci_halfwidth;
  BandCheck result{true, kInf, 0.0};
  for (double a : alphas) {
    const double v = est.curve.Evaluate(a);
    const double lower = reference(std::min(1.0, a + ci)) - ci;
    const double upper = reference(std::max(0.0, a - ci)) + ci;
    const double slack = std::min(v - lower, upper - v);
    if (slack < result.margin) {
      result.margin = slack;
      result.worst_alpha = a;
    }
  }
  result.holds = result.margin >= 0.0;
  return result;
}

BandCheck CheckAboveBand(const EmpiricalCurve& est,
                         const std::function<double(double)>& reference,
                         std::span<const double> alphas) {
  const double ci = est.ci_halfwidth;
  BandCheck result{true, kInf, 0.0};
  for (double a : alphas) {
    const double slack =
        est.curve.Evaluate(a) - (reference(std::min(1.0, a + ci)) - ci);
    if (slack < result.margin) {
      result.margin = slack;
      result.worst_alpha = a;
    }
  }
  result.holds = result.margin >= 0.0;
  return result;
}

ShiftLaw PointMassLaw(double s) {
  return [s](std::mt19937_64&) { return s; };
}

ShiftLaw UniformLaw(double s) {
  return [s](std::mt19937_64& eng) {
    return std::uniform_real_distribution<double>(-s, s)(eng);
  };
}

ShiftLaw RandomDiscreteLaw(double s, std::mt19937_64& rng) {
  const int atoms = std::uniform_int_distribution<int>(1, 8)(rng);
  std::vector<double> where(atoms);
  std::vector<double> weight(atoms);
  std::uniform_real_distribution<double> pos(-s, s);
  std::uniform_real_distribution<double> mass(0.05, 1.0);
  for (int i = 0; i < atoms; ++i) {
    where[i] = pos(rng);
    weight[i] = mass(rng);
  }
  return [where, weight](std::mt19937_64& eng) {
    std::discrete_distribution<int> pick(weight.begin(), weight.end());
    return where[pick(eng)];
  };
}

absl::StatusOr<GdpInfCheck> CheckGdpInf(double s, double sigma,
                                        const ShiftLaw& law, std::int64_t n,
                                        std::uint64_t seed) {
  if (!(s >= 0.0) || !(sigma > 0.0) || n < 1) {
    return absl::InvalidArgumentError("need s >= 0, sigma > 0, n >= 1");
  }
  std::mt19937_64 eng = DerivedEngine(seed, 0);
  std::normal_distribution<double> normal;
  std::vector<double> p(n);
  std::vector<double> q(n);
  for (std::int64_t i = 0; i < n; ++i) {
    const double w = law(eng);
    if (std::abs(w) > s * (1.0 + 1e-12)) {
      return absl::InvalidArgumentError(
          absl::StrCat("shift law produced |W| = ", std::abs(w), " > s"));
    }
    p[i] = w + sigma * normal(eng);
    q[i] = sigma * normal(eng);
  }
  EmpiricalOptions options;
  options.method = EmpiricalMethod::kHistogramLr;
  FDP_ASSIGN_OR_RETURN(EmpiricalCurve est,
                       EmpiricalTradeoff(p, q, 1, options));
  const double mu = s / sigma;
  auto reference = [mu](double a) { return *GdpEval(mu, a); };
  const std::vector<double> alphas = CheckAlphas();
  const BandCheck band = CheckAboveBand(est, reference, alphas);
  double gap = kInf;
  for (double a : alphas) {
    gap = std::min(gap, est.curve.Evaluate(a) - reference(a));
  }
  return GdpInfCheck{band.holds, band.margin, gap, est.ci_halfwidth};
}

absl::StatusOr<BruteForceResult> BruteForceSchedule(
    double c, std::span<const double> s_seq, double z0, bool terminal_zero,
    int restarts, std::uint64_t seed) {
  const std::size_t t = s_seq.size();
  if (t < 1 || t > 12) {
    return absl::InvalidArgumentError("brute force needs 1 <= t <= 12");
  }
  if (!(c >= 0.0) || !(z0 >= 0.0) || restarts < 1) {
    return absl::InvalidArgumentError("need c >= 0, z0 >= 0, restarts >= 1");
  }
  const std::size_t free = terminal_zero ? t - 1 : t;
  std::vector<BruteForceResult> runs(restarts);
  internal::ParallelFor(restarts, [&](std::int64_t r) {
    std::mt19937_64 eng = DerivedEngine(seed, r);
    std::uniform_real_distribution<double> unit;
    std::vector<double> lam(t, 1.0);
    for (std::size_t k = 0; k < free; ++k) lam[k] = unit(eng);
    double best = ObjectiveSumSq(c, s_seq, z0, lam);
    for (int sweep = 0; sweep < 50000; ++sweep) {
      const double before = best;
      for (std::size_t k = 0; k < free; ++k) {
        // The objective is quadratic in each lambda_k: fit it exactly.
        const double keep = lam[k];
        lam[k] = 0.0;
        const double f0 = ObjectiveSumSq(c, s_seq, z0, lam);
        lam[k] = 0.5;
        const double fh = ObjectiveSumSq(c, s_seq, z0, lam);
        lam[k] = 1.0;
        const double f1 = ObjectiveSumSq(c, s_seq, z0, lam);
        const double qa = 2.0 * (f1 - 2.0 * fh + f0);
        const double qb = f1 - f0 - qa;
        double cand = f0 <= f1 ? 0.0 : 1.0;
        if (qa > 0.0) cand = std::clamp(-qb / (2.0 * qa), 0.0, 1.0);
        lam[k] = cand;
        const double value = ObjectiveSumSq(c, s_seq, z0, lam);
        if (value <= best) {
          best = value;
        } else {
          lam[k] = keep;
        }
      }
      if (before - best <= 1e-17 * std::max(best, 1e-300)) break;
    }
    runs[r] = {best, lam};
  });
  std::size_t arg = 0;
  for (std::size_t r = 1; r < runs.size(); ++r) {
    if (runs[r].sum_sq < runs[arg].sum_sq) arg = r;
  }
  return runs[arg];
}

}  // namespace fdp
