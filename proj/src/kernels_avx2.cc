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

// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>

#include "kernels_internal.h"

namespace fdp::kernels::internal {
namespace {

constexpr std::size_t kLanes = 4;

double HorizontalSum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

double HorizontalMax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

void MixWithIdentity(std::span<const double> alphas, std::span<const double> f,
                     double p, std::span<double> out) {
  const double q = 1.0 - p;
  const __m256d vp = _mm256_set1_pd(p);
  const __m256d vq = _mm256_set1_pd(q);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + kLanes <= out.size(); i += kLanes) {
    const __m256d a = _mm256_loadu_pd(alphas.data() + i);
    const __m256d v = _mm256_loadu_pd(f.data() + i);
    const __m256d id = _mm256_sub_pd(one, a);
    _mm256_storeu_pd(out.data() + i,
                     _mm256_add_pd(_mm256_mul_pd(vp, v), _mm256_mul_pd(vq, id)));
  }
  for (; i < out.size(); ++i) out[i] = p * f[i] + q * (1.0 - alphas[i]);
}

void PointwiseMin(std::span<const double> a, std::span<const double> b,
                  std::span<double> out) {
  std::size_t i = 0;
  for (; i + kLanes <= out.size(); i += kLanes) {
    _mm256_storeu_pd(out.data() + i,
                     _mm256_min_pd(_mm256_loadu_pd(a.data() + i),
                                   _mm256_loadu_pd(b.data() + i)));
  }
  for (; i < out.size(); ++i) out[i] = std::min(a[i], b[i]);
}

double MaxViolation(std::span<const double> f, std::span<const double> g) {
  const double neg_inf = -std::numeric_limits<double>::infinity();
  __m256d best = _mm256_set1_pd(neg_inf);
  std::size_t i = 0;
  for (; i + kLanes <= f.size(); i += kLanes) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(g.data() + i),
                                    _mm256_loadu_pd(f.data() + i));
    best = _mm256_max_pd(best, d);
  }
  double result = HorizontalMax(best);
  for (; i < f.size(); ++i) result = std::max(result, g[i] - f[i]);
  return result;
}

double MaxHockeyGap(std::span<const double> alphas, std::span<const double> f,
                    double exp_eps) {
  const double neg_inf = -std::numeric_limits<double>::infinity();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d ve = _mm256_set1_pd(exp_eps);
  __m256d best = _mm256_set1_pd(neg_inf);
  std::size_t i = 0;
  for (; i + kLanes <= f.size(); i += kLanes) {
    const __m256d a = _mm256_loadu_pd(alphas.data() + i);
    const __m256d v = _mm256_loadu_pd(f.data() + i);
    const __m256d gap = _mm256_sub_pd(_mm256_fnmadd_pd(ve, a, one), v);
    best = _mm256_max_pd(best, gap);
  }
  double result = HorizontalMax(best);
  for (; i < f.size(); ++i) {
    result = std::max(result, 1.0 - exp_eps * alphas[i] - f[i]);
  }
  return result;
}

double HockeyStickSum(std::span<const double> pmf,
                      std::span<const double> exp_neg_loss, double exp_eps) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d ve = _mm256_set1_pd(exp_eps);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= pmf.size(); i += kLanes) {
    const __m256d w = _mm256_loadu_pd(exp_neg_loss.data() + i);
    const __m256d m = _mm256_loadu_pd(pmf.data() + i);
    acc = _mm256_fmadd_pd(m, _mm256_fnmadd_pd(ve, w, one), acc);
  }
  double total = HorizontalSum(acc);
  for (; i < pmf.size(); ++i) {
    total += pmf[i] * (1.0 - exp_eps * exp_neg_loss[i]);
  }
  return total;
}

void Ar1Step(std::span<double> x, double c, double shift,
             std::span<const double> ind, double scale,
             std::span<const double> noise, double lo, double hi) {
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d vs = _mm256_set1_pd(shift);
  const __m256d vscale = _mm256_set1_pd(scale);
  const __m256d vlo = _mm256_set1_pd(lo);
  const __m256d vhi = _mm256_set1_pd(hi);
  const bool has_ind = !ind.empty();
  std::size_t i = 0;
  for (; i + kLanes <= x.size(); i += kLanes) {
    const __m256d shift_term =
        has_ind ? _mm256_mul_pd(vs, _mm256_loadu_pd(ind.data() + i)) : vs;
    __m256d v = _mm256_fmadd_pd(vc, _mm256_loadu_pd(x.data() + i), shift_term);
    v = _mm256_fmadd_pd(vscale, _mm256_loadu_pd(noise.data() + i), v);
    v = _mm256_min_pd(_mm256_max_pd(v, vlo), vhi);
    _mm256_storeu_pd(x.data() + i, v);
  }
  for (; i < x.size(); ++i) {
    const double s = has_ind ? shift * ind[i] : shift;
    x[i] = std::clamp(c * x[i] + s + scale * noise[i], lo, hi);
  }
}

double Sum(std::span<const double> a) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= a.size(); i += kLanes) {
    acc = _mm256_add_pd(acc, _mm256_loadu_pd(a.data() + i));
  }
  double total = HorizontalSum(acc);
  for (; i < a.size(); ++i) total += a[i];
  return total;
}

double Dot(std::span<const double> a, std::span<const double> b) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= a.size(); i += kLanes) {
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i),
                          _mm256_loadu_pd(b.data() + i), acc);
  }
  double total = HorizontalSum(acc);
  for (; i < a.size(); ++i) total += a[i] * b[i];
  return total;
}

}  // namespace

const KernelTable& Avx2Table() {
  static const KernelTable table{
      .isa = Isa::kAvx2,
      .mix_with_identity = &MixWithIdentity,
      .pointwise_min = &PointwiseMin,
      .max_violation = &MaxViolation,
      .max_hockey_gap = &MaxHockeyGap,
      .hockey_stick_sum = &HockeyStickSum,
      .ar1_step = &Ar1Step,
      .sum = &Sum,
      .dot = &Dot,
  };
  return table;
}

}  // namespace fdp::kernels::internal
