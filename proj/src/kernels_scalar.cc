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

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>

#include "kernels_internal.h"

namespace fdp::kernels::internal {
namespace {

void MixWithIdentity(std::span<const double> alphas, std::span<const double> f,
                     double p, std::span<double> out) {
  const double q = 1.0 - p;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = p * f[i] + q * (1.0 - alphas[i]);
  }
}

void PointwiseMin(std::span<const double> a, std::span<const double> b,
                  std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::min(a[i], b[i]);
}

double MaxViolation(std::span<const double> f, std::span<const double> g) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < f.size(); ++i) best = std::max(best, g[i] - f[i]);
  return best;
}

double MaxHockeyGap(std::span<const double> alphas, std::span<const double> f,
                    double exp_eps) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < f.size(); ++i) {
    best = std::max(best, 1.0 - exp_eps * alphas[i] - f[i]);
  }
  return best;
}

double HockeyStickSum(std::span<const double> pmf,
                      std::span<const double> exp_neg_loss, double exp_eps) {
  double total = 0.0;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    total += pmf[i] * (1.0 - exp_eps * exp_neg_loss[i]);
  }
  return total;
}

void Ar1Step(std::span<double> x, double c, double shift,
             std::span<const double> ind, double scale,
             std::span<const double> noise, double lo, double hi) {
  if (ind.empty()) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = std::clamp(c * x[i] + shift + scale * noise[i], lo, hi);
    }
    return;
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = std::clamp(c * x[i] + shift * ind[i] + scale * noise[i], lo, hi);
  }
}

double Sum(std::span<const double> a) {
  double total = 0.0;
  for (double v : a) total += v;
  return total;
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) total += a[i] * b[i];
  return total;
}

}  // namespace

const KernelTable& ScalarTable() {
  static const KernelTable table{
      .isa = Isa::kScalar,
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
