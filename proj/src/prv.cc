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

#include "fdp/prv.h"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <ostream>
#include <utility>
#include <variant>
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

// Loss law given by its CDF and survival function; both right-continuous.
struct LossLaw {
  std::function<double(double)> cdf;
  std::function<double(double)> sf;
  bool atom_at_zero = false;
};

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
using RealBuffer = std::unique_ptr<double[], FftwFree>;
using ComplexBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

// FFTW planning is not thread-safe; execution is.
std::mutex& PlannerMutex() {
  static std::mutex mu;
  return mu;
}

struct RealFft {
  explicit RealFft(std::size_t n)
      : size(n),
        real(static_cast<double*>(fftw_malloc(sizeof(double) * n))),
        spectrum(static_cast<fftw_complex*>(
            fftw_malloc(sizeof(fftw_complex) * (n / 2 + 1)))) {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    const int len = static_cast<int>(n);
    forward = fftw_plan_dft_r2c_1d(len, real.get(), spectrum.get(),
                                   FFTW_ESTIMATE);
    backward = fftw_plan_dft_c2r_1d(len, spectrum.get(), real.get(),
                                    FFTW_ESTIMATE);
  }
  ~RealFft() {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
  }
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t bins() const { return size / 2 + 1; }

  std::size_t size;
  RealBuffer real;
  ComplexBuffer spectrum;
  fftw_plan forward;
  fftw_plan backward;
};

// Smallest 7-smooth integer >= n.
std::size_t GoodFftSize(std::size_t n) {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::size_t p7 = 1; p7 < 2 * n + 8; p7 *= 7) {
    for (std::size_t p5 = p7; p5 < 2 * n + 8; p5 *= 5) {
      for (std::size_t p3 = p5; p3 < 2 * n + 8; p3 *= 3) {
        std::size_t v = p3;
        while (v < n) v *= 2;
        best = std::min(best, v);
      }
    }
  }
  return best;
}

double Simpson(const std::function<double(double)>& f, double a, double b,
               double max_step) {
  if (!(b > a)) return 0.0;
  std::int64_t m = static_cast<std::int64_t>(std::ceil((b - a) / max_step));
  m = std::max<std::int64_t>(2, m + (m % 2));
  const double step = (b - a) / static_cast<double>(m);
  double total = f(a) + f(b);
  for (std::int64_t i = 1; i < m; ++i) {
    total += (i % 2 == 1 ? 4.0 : 2.0) * f(a + step * static_cast<double>(i));
  }
  return total * step / 3.0;
}

// E[Y; a < Y <= b] = a P(a < Y <= b) + int_a^b (S(x) - S(b)) dx.
double TruncatedMean(const LossLaw& law, double a, double b, double mesh) {
  const double sb = law.sf(b);
  const double mass = law.sf(a) - sb;
  const double step = mesh / 8.0;
  auto integrand = [&](double x) { return law.sf(x) - sb; };
  double integral;
  if (a < 0.0 && b > 0.0) {
    // Evaluate the left piece just below zero so an atom at 0 is excluded.
    const double below = -std::numeric_limits<double>::min();
    auto left = [&](double x) { return integrand(std::min(x, below)); };
    integral = Simpson(left, a, 0.0, step) + Simpson(integrand, 0.0, b, step);
  } else {
    integral = Simpson(integrand, a, b, step);
  }
  return a * mass + integral;
}

// Finds x with g(x) <= target by doubling away from `start` along `dir`.
double TailPoint(const std::function<double(double)>& g, double target,
                 double start, double dir, double mesh) {
  double width = 1.0;
  double x = start + dir * width;
  while (g(x) > target && width < 1e6) {
    width *= 2.0;
    x = start + dir * width;
  }
  const double inner = start + dir * (width / 2.0);
  return Bisect([&](double y) { return g(y) - target; }, std::min(inner, x),
                std::max(inner, x), mesh);
}

absl::StatusOr<PrvGrid> DiscretizeLaw(const LossLaw& law, double center,
                                      const GridSpec& spec) {
  const double h = spec.mesh;
  const double half_tail = 0.5 * spec.factor_tail;
  const double lo = TailPoint(law.cdf, half_tail, center, -1.0, h);
  const double hi = TailPoint(law.sf, half_tail, center, 1.0, h);
  const std::int64_t i_lo = static_cast<std::int64_t>(std::floor(lo / h));
  const std::int64_t i_hi = static_cast<std::int64_t>(std::ceil(hi / h));
  const std::size_t n = static_cast<std::size_t>(i_hi - i_lo + 1);
  if (n > (std::size_t{1} << 26)) {
    return absl::ResourceExhaustedError(
        absl::StrCat("PRV grid would need ", n, " points; increase mesh"));
  }
  PrvGrid grid;
  grid.mesh = h;
  grid.origin = static_cast<double>(i_lo) * h;
  grid.pmf.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid.Loss(i);
    const double left = x - 0.5 * h;
    const double right = x + 0.5 * h;
    double mass;
    if (right <= 0.0) {
      mass = law.cdf(right) - law.cdf(left);
    } else if (left >= 0.0) {
      mass = law.sf(left) - law.sf(right);
    } else {
      mass = (1.0 - law.sf(right)) - law.cdf(left);
    }
    grid.pmf[i] = std::max(mass, 0.0);
  }
  const double a = grid.Loss(0) - 0.5 * h;
  const double b = grid.Loss(n - 1) + 0.5 * h;
  grid.tail_mass = law.cdf(a) + law.sf(b);
  if (spec.mean_correction) {
    const double total = grid.TotalMass();
    const double target = TruncatedMean(law, a, b, h);
    double discrete = 0.0;
    for (std::size_t i = 0; i < n; ++i) discrete += grid.pmf[i] * grid.Loss(i);
    const double shift = (target - discrete) / total;
    if (std::abs(shift) <= h) grid.origin += shift;
  }
  return grid;
}

// Variance-matched three-point law for a Gaussian narrower than the mesh.
PrvGrid NarrowGaussian(double mean, double sd, const GridSpec& spec) {
  const double h = spec.mesh;
  const double q = std::min(0.5, 0.5 * sd * sd / (h * h));
  const double nearest = std::round(mean / h) * h;
  PrvGrid grid;
  grid.mesh = h;
  grid.origin = nearest - h + (spec.mean_correction ? mean - nearest : 0.0);
  grid.pmf = {q, 1.0 - 2.0 * q, q};
  return grid;
}

LossLaw GaussianLaw(double mean, double sd) {
  return {[=](double x) { return NormalCdf((x - mean) / sd); },
          [=](double x) { return NormalCdf((mean - x) / sd); }, false};
}

// log((p - 1 + e^u) / p) for u >= 0, stable for small p and large u.
double ShiftedLog(double u, double p) {
  if (u > 1.0) return u - std::log(p) + std::log1p((p - 1.0) * std::exp(-u));
  return std::log1p(std::expm1(u) / p);
}

// Moves cumulative mass up to `budget` from each end of the pmf into the
// tail, dropping the trimmed entries.
void TrimTails(PrvGrid& grid, double budget) {
  std::size_t first = 0;
  double removed = 0.0;
  while (first + 1 < grid.pmf.size() && removed + grid.pmf[first] <= budget) {
    removed += grid.pmf[first];
    ++first;
  }
  std::size_t last = grid.pmf.size();
  double removed_hi = 0.0;
  while (last > first + 1 && removed_hi + grid.pmf[last - 1] <= budget) {
    removed_hi += grid.pmf[last - 1];
    --last;
  }
  if (first > 0 || last < grid.pmf.size()) {
    grid.pmf = std::vector<double>(grid.pmf.begin() + first,
                                   grid.pmf.begin() + last);
    grid.origin += grid.mesh * static_cast<double>(first);
    grid.tail_mass += removed + removed_hi;
  }
}

absl::Status CheckBudget(const PrvGrid& grid, const GridSpec& spec) {
  if (grid.tail_mass > spec.tail_budget) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "truncated PRV mass ", grid.tail_mass, " exceeds budget ",
        spec.tail_budget));
  }
  return absl::OkStatus();
}

// Redistributes mass onto a grid of the given mesh, splitting each atom
// between its two neighbours so the mean is preserved.
PrvGrid Resample(const PrvGrid& grid, double mesh) {
  const double start = std::floor(grid.lo() / mesh) * mesh;
  const std::size_t n =
      static_cast<std::size_t>(std::ceil((grid.hi() - start) / mesh)) + 2;
  PrvGrid out;
  out.mesh = mesh;
  out.origin = start;
  out.tail_mass = grid.tail_mass;
  out.pmf.assign(n, 0.0);
  for (std::size_t i = 0; i < grid.pmf.size(); ++i) {
    const double pos = (grid.Loss(i) - start) / mesh;
    const std::size_t j = std::min(static_cast<std::size_t>(std::floor(pos)),
                                   n - 2);
    const double w = std::clamp(pos - static_cast<double>(j), 0.0, 1.0);
    out.pmf[j] += (1.0 - w) * grid.pmf[i];
    out.pmf[j + 1] += w * grid.pmf[i];
  }
  return out;
}

std::vector<double> LinearConvolution(std::span<const double> a,
                                      std::span<const double> b) {
  const std::size_t out_size = a.size() + b.size() - 1;
  std::vector<double> out(out_size, 0.0);
  if (std::min(a.size(), b.size()) <= 64) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0.0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
  }
  const std::size_t n = GoodFftSize(out_size);
  RealFft fa(n);
  RealFft fb(n);
  std::fill(fa.real.get(), fa.real.get() + n, 0.0);
  std::fill(fb.real.get(), fb.real.get() + n, 0.0);
  std::copy(a.begin(), a.end(), fa.real.get());
  std::copy(b.begin(), b.end(), fb.real.get());
  fftw_execute(fa.forward);
  fftw_execute(fb.forward);
  for (std::size_t i = 0; i < fa.bins(); ++i) {
    const std::complex<double> x(fa.spectrum[i][0], fa.spectrum[i][1]);
    const std::complex<double> y(fb.spectrum[i][0], fb.spectrum[i][1]);
    const std::complex<double> z = x * y;
    fa.spectrum[i][0] = z.real();
    fa.spectrum[i][1] = z.imag();
  }
  fftw_execute(fa.backward);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < out_size; ++i) {
    out[i] = std::max(fa.real[i] * scale, 0.0);
  }
  return out;
}

double HockeySum(const PrvGrid& prv, double eps) {
  const double pos = (eps - prv.origin) / prv.mesh;
  std::size_t first = 0;
  if (pos >= 0.0) {
    if (pos >= static_cast<double>(prv.pmf.size())) return 0.0;
    first = static_cast<std::size_t>(std::floor(pos));
  }
  while (first < prv.pmf.size() && prv.Loss(first) <= eps) ++first;
  if (first >= prv.pmf.size()) return 0.0;
  const std::size_t n = prv.pmf.size() - first;
  std::vector<double> ratio(n);
  for (std::size_t i = 0; i < n; ++i) {
    ratio[i] = std::exp(eps - prv.Loss(first + i));
  }
  const std::span<const double> masses(prv.pmf.data() + first, n);
  return std::max(0.0, kernels::Active().hockey_stick_sum(masses, ratio, 1.0));
}

}  // namespace

absl::Status ValidateGridSpec(const GridSpec& spec) {
  if (!(spec.mesh > 0.0) || !std::isfinite(spec.mesh)) {
    return absl::InvalidArgumentError("PRV mesh must be positive");
  }
  if (!(spec.factor_tail > 0.0 && spec.factor_tail < 1e-3)) {
    return absl::InvalidArgumentError("factor_tail must lie in (0, 1e-3)");
  }
  if (!(spec.window_sd >= 4.0)) {
    return absl::InvalidArgumentError("window_sd must be at least 4");
  }
  if (!(spec.tail_budget > 0.0)) {
    return absl::InvalidArgumentError("tail_budget must be positive");
  }
  return absl::OkStatus();
}

double PrvGrid::TotalMass() const { return kernels::Active().sum(pmf); }

double PrvGrid::Mean() const {
  double m = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    m += pmf[i] * Loss(i);
    total += pmf[i];
  }
  return m / total;
}

double PrvGrid::Variance() const {
  const double m = Mean();
  double v = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    const double d = Loss(i) - m;
    v += pmf[i] * d * d;
    total += pmf[i];
  }
  return v / total;
}

PrvGrid PointMassPrv(double mesh) {
  PrvGrid grid;
  grid.mesh = mesh;
  grid.origin = 0.0;
  grid.pmf = {1.0};
  return grid;
}

absl::StatusOr<PrvGrid> PrvOfGdp(double mu, const GridSpec& spec) {
  FDP_RETURN_IF_ERROR(ValidateGridSpec(spec));
  if (std::isnan(mu) || mu < 0.0 || std::isinf(mu)) {
    return absl::InvalidArgumentError(
        absl::StrCat("mu must be finite and nonnegative, got ", mu));
  }
  if (mu == 0.0) return PointMassPrv(spec.mesh);
  if (spec.mesh > mu / 10.0) {
    return absl::FailedPreconditionError(absl::StrCat(
        "mesh ", spec.mesh, " too coarse for mu=", mu, "; need mesh <= mu/10"));
  }
  return DiscretizeLaw(GaussianLaw(0.5 * mu * mu, mu), 0.5 * mu * mu, spec);
}

double SubsampledGdpLossSf(double mu, double p, double t) {
  if (mu == 0.0 || p == 0.0) return t < 0.0 ? 1.0 : 0.0;
  if (t >= 0.0) {
    const double e = ShiftedLog(t, p);
    return p * NormalCdf(-e / mu + 0.5 * mu) +
           (1.0 - p) * NormalCdf(-e / mu - 0.5 * mu);
  }
  return 1.0 - SubsampledGdpLossCdf(mu, p, t);
}

double SubsampledGdpLossCdf(double mu, double p, double t) {
  if (mu == 0.0 || p == 0.0) return t < 0.0 ? 0.0 : 1.0;
  if (t < 0.0) {
    const double e = ShiftedLog(-t, p);
    return NormalCdf(-e / mu - 0.5 * mu);
  }
  return 1.0 - SubsampledGdpLossSf(mu, p, t);
}

absl::StatusOr<PrvGrid> PrvOfSubsampledGdp(double mu, double p,
                                           const GridSpec& spec) {
  FDP_RETURN_IF_ERROR(ValidateGridSpec(spec));
  if (std::isnan(mu) || mu < 0.0 || std::isinf(mu)) {
    return absl::InvalidArgumentError(
        absl::StrCat("mu must be finite and nonnegative, got ", mu));
  }
  if (std::isnan(p) || p < 0.0 || p > 1.0) {
    return absl::InvalidArgumentError(
        absl::StrCat("subsampling rate must lie in [0, 1], got ", p));
  }
  if (mu == 0.0 || p == 0.0) return PointMassPrv(spec.mesh);
  LossLaw law{[=](double x) { return SubsampledGdpLossCdf(mu, p, x); },
              [=](double x) { return SubsampledGdpLossSf(mu, p, x); },
              p < 1.0};
  return DiscretizeLaw(law, 0.0, spec);
}

absl::StatusOr<PrvGrid> SelfCompose(const PrvGrid& prv, std::int64_t k,
                                    const GridSpec& spec) {
  FDP_RETURN_IF_ERROR(ValidateGridSpec(spec));
  if (k < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("composition count must be >= 1, got ", k));
  }
  if (k == 1 || prv.pmf.size() == 1) {
    PrvGrid out = prv;
    out.origin = static_cast<double>(k) * prv.origin;
    out.tail_mass = std::min(1.0, static_cast<double>(k) * prv.tail_mass);
    FDP_RETURN_IF_ERROR(CheckBudget(out, spec));
    return out;
  }
  const double h = prv.mesh;
  const double kd = static_cast<double>(k);
  const std::size_t n1 = prv.pmf.size();
  const double full_d = kd * static_cast<double>(n1 - 1) + 1.0;
  const double sd_k = std::sqrt(kd * prv.Variance());
  const double center = kd * (prv.Mean() - prv.origin) / h;
  const double half = spec.window_sd * sd_k / h + static_cast<double>(n1);
  const double window_d = std::max(2.0 * half, static_cast<double>(n1)) + 1.0;

  std::size_t n;
  std::int64_t start = 0;
  double window_tail = 0.0;
  if (window_d >= full_d) {
    n = GoodFftSize(static_cast<std::size_t>(full_d));
  } else {
    n = GoodFftSize(static_cast<std::size_t>(window_d));
    const double max_start = full_d - static_cast<double>(n);
    start = static_cast<std::int64_t>(
        std::clamp(std::floor(center - 0.5 * static_cast<double>(n)), 0.0,
                   std::max(0.0, max_start)));
    // Gaussian estimate of the mass that wraps around the window.
    const double lo_gap = (center - static_cast<double>(start)) * h / sd_k;
    const double hi_gap =
        (static_cast<double>(start) + static_cast<double>(n) - center) * h /
        sd_k;
    window_tail = NormalCdf(-lo_gap) + NormalCdf(-hi_gap);
  }
  if (n > (std::size_t{1} << 27)) {
    return absl::ResourceExhaustedError(
        absl::StrCat("self-composition needs an FFT of size ", n));
  }
  RealFft fft(n);
  std::fill(fft.real.get(), fft.real.get() + n, 0.0);
  std::copy(prv.pmf.begin(), prv.pmf.end(), fft.real.get());
  fftw_execute(fft.forward);
  for (std::size_t i = 0; i < fft.bins(); ++i) {
    const std::complex<double> z(fft.spectrum[i][0], fft.spectrum[i][1]);
    const double r = std::abs(z);
    const std::complex<double> zk =
        r == 0.0 ? std::complex<double>(0.0, 0.0)
                 : std::polar(std::pow(r, kd), kd * std::arg(z));
    fft.spectrum[i][0] = zk.real();
    fft.spectrum[i][1] = zk.imag();
  }
  fftw_execute(fft.backward);
  const double scale = 1.0 / static_cast<double>(n);
  PrvGrid out;
  out.mesh = h;
  out.origin = kd * prv.origin + static_cast<double>(start) * h;
  out.pmf.assign(n, 0.0);
  const std::int64_t nn = static_cast<std::int64_t>(n);
  for (std::int64_t j = 0; j < nn; ++j) {
    const std::int64_t offset = ((j - start) % nn + nn) % nn;
    out.pmf[offset] = std::max(fft.real[j] * scale, 0.0);
  }
  out.tail_mass = std::min(1.0, kd * prv.tail_mass + window_tail);
  TrimTails(out, spec.factor_tail);
  FDP_RETURN_IF_ERROR(CheckBudget(out, spec));
  return out;
}

absl::StatusOr<PrvGrid> Convolve(const PrvGrid& a, const PrvGrid& b,
                                 const GridSpec& spec) {
  FDP_RETURN_IF_ERROR(ValidateGridSpec(spec));
  const double rel = std::abs(a.mesh - b.mesh) / std::max(a.mesh, b.mesh);
  if (rel > 1e-12) {
    return a.mesh < b.mesh ? Convolve(a, Resample(b, a.mesh), spec)
                           : Convolve(Resample(a, b.mesh), b, spec);
  }
  PrvGrid out;
  out.mesh = a.mesh;
  out.origin = a.origin + b.origin;
  out.pmf = LinearConvolution(a.pmf, b.pmf);
  out.tail_mass = std::min(1.0, a.tail_mass + b.tail_mass);
  TrimTails(out, spec.factor_tail);
  FDP_RETURN_IF_ERROR(CheckBudget(out, spec));
  return out;
}

PrvDelta PrvDeltaAt(const PrvGrid& prv, double eps) {
  const double h = prv.mesh;
  const double center = HockeySum(prv, eps);
  const double below = HockeySum(prv, eps - 0.5 * h);
  const double above = HockeySum(prv, eps + 0.5 * h);
  PrvDelta out;
  out.tail = prv.tail_mass;
  out.delta = std::clamp(center + prv.tail_mass, 0.0, 1.0);
  out.discretization = 0.5 * std::abs(below - above);
  return out;
}

absl::Status ValidateComposite(const CompositeBound& cb) {
  for (const CompositeFactor& factor : cb.factors) {
    if (const auto* g = std::get_if<GdpFactor>(&factor)) {
      if (!(g->mu >= 0.0) || !std::isfinite(g->mu)) {
        return absl::InvalidArgumentError("GDP factor needs finite mu >= 0");
      }
    } else {
      const auto& s = std::get<SubsampledGdpFactor>(factor);
      if (!(s.mu >= 0.0) || !std::isfinite(s.mu)) {
        return absl::InvalidArgumentError(
            "subsampled factor needs finite mu >= 0");
      }
      if (!(s.p >= 0.0 && s.p <= 1.0)) {
        return absl::InvalidArgumentError(
            "subsampled factor needs p in [0, 1]");
      }
      if (s.multiplicity < 1) {
        return absl::InvalidArgumentError(
            "subsampled factor needs multiplicity >= 1");
      }
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<PrvGrid> ComposeToPrv(const CompositeBound& cb,
                                     const GridSpec& spec) {
  FDP_RETURN_IF_ERROR(ValidateGridSpec(spec));
  FDP_RETURN_IF_ERROR(ValidateComposite(cb));
  double gdp_sq = 0.0;
  PrvGrid acc = PointMassPrv(spec.mesh);
  for (const CompositeFactor& factor : cb.factors) {
    if (const auto* g = std::get_if<GdpFactor>(&factor)) {
      gdp_sq += g->mu * g->mu;
      continue;
    }
    const auto& s = std::get<SubsampledGdpFactor>(factor);
    FDP_ASSIGN_OR_RETURN(PrvGrid single, PrvOfSubsampledGdp(s.mu, s.p, spec));
    FDP_ASSIGN_OR_RETURN(PrvGrid composed,
                         SelfCompose(single, s.multiplicity, spec));
    FDP_ASSIGN_OR_RETURN(acc, Convolve(acc, composed, spec));
  }
  if (gdp_sq > 0.0) {
    const double mu = std::sqrt(gdp_sq);
    PrvGrid gauss;
    if (mu >= 10.0 * spec.mesh) {
      FDP_ASSIGN_OR_RETURN(gauss, PrvOfGdp(mu, spec));
    } else if (mu >= spec.mesh) {
      FDP_ASSIGN_OR_RETURN(
          gauss, DiscretizeLaw(GaussianLaw(0.5 * gdp_sq, mu), 0.5 * gdp_sq,
                               spec));
    } else {
      gauss = NarrowGaussian(0.5 * gdp_sq, mu, spec);
    }
    FDP_ASSIGN_OR_RETURN(acc, Convolve(acc, gauss, spec));
  }
  return acc;
}

absl::StatusOr<std::vector<DeltaRow>> EvaluateComposite(
    const CompositeBound& cb, std::span<const double> eps_list,
    const GridSpec& spec) {
  FDP_ASSIGN_OR_RETURN(const PrvGrid prv, ComposeToPrv(cb, spec));
  std::vector<DeltaRow> rows;
  rows.reserve(eps_list.size());
  for (double eps : eps_list) {
    const PrvDelta d = PrvDeltaAt(prv, eps);
    rows.push_back({eps, d.delta, d.uncertainty()});
  }
  return rows;
}

absl::StatusOr<double> PrvEpsAt(const PrvGrid& prv, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must lie in (0, 1), got ", delta));
  }
  if (prv.tail_mass >= delta) {
    return absl::ResourceExhaustedError(
        "truncated mass exceeds the requested delta");
  }
  auto delta_of = [&](double e) { return PrvDeltaAt(prv, e).delta; };
  if (delta_of(0.0) <= delta) return 0.0;
  const double hi = std::max(prv.hi(), 1.0);
  return Bisect([&](double e) { return delta_of(e) - delta; }, 0.0, hi,
                1e-12 * hi);
}

void WriteDeltaCsv(std::span<const DeltaRow> rows, std::ostream& out) {
  out << "eps,delta,uncertainty\n";
  char line[96];
  for (const DeltaRow& row : rows) {
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g\n", row.eps,
                  row.delta, row.uncertainty);
    out << line;
  }
}

}  // namespace fdp
