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

// Data-parallel inner loops shared by the curve, PRV and simulation code.
//
// Every kernel has a portable scalar reference implementation and, on x86-64,
// an AVX2+FMA variant. The variant is picked once at first use from the CPU
// feature flags; setting FDP_SIMD=scalar in the environment forces the
// reference path. The two paths agree to a few ulps (reductions are
// reassociated across lanes) and are checked against each other in
// kernels_test.

#ifndef FDP_KERNELS_H_
#define FDP_KERNELS_H_

#include <span>
#include <string_view>

namespace fdp::kernels {

enum class Isa { kScalar, kAvx2 };

std::string_view IsaName(Isa isa);

struct KernelTable {
  Isa isa;

  // out[i] = p * f[i] + (1 - p) * (1 - alphas[i]).
  void (*mix_with_identity)(std::span<const double> alphas,
                            std::span<const double> f, double p,
                            std::span<double> out);

  // out[i] = min(a[i], b[i]).
  void (*pointwise_min)(std::span<const double> a, std::span<const double> b,
                        std::span<double> out);

  // max_i (g[i] - f[i]); -inf for empty input.
  double (*max_violation)(std::span<const double> f,
                          std::span<const double> g);

  // max_i (1 - exp_eps * alphas[i] - f[i]); -inf for empty input.
  double (*max_hockey_gap)(std::span<const double> alphas,
                           std::span<const double> f, double exp_eps);

  // sum_i pmf[i] * (1 - exp_eps * exp_neg_loss[i]).
  double (*hockey_stick_sum)(std::span<const double> pmf,
                             std::span<const double> exp_neg_loss,
                             double exp_eps);

  // x[i] = clamp(c * x[i] + shift * ind[i] + scale * noise[i], lo, hi).
  // An empty `ind` means ind[i] = 1.
  void (*ar1_step)(std::span<double> x, double c, double shift,
                   std::span<const double> ind, double scale,
                   std::span<const double> noise, double lo, double hi);

  double (*sum)(std::span<const double> a);
  double (*dot)(std::span<const double> a, std::span<const double> b);
};

const KernelTable& ScalarKernels();

// Null when the binary was built without AVX2 support or the CPU lacks it.
const KernelTable* Avx2Kernels();

// The dispatched table.
const KernelTable& Active();

}  // namespace fdp::kernels

#endif  // FDP_KERNELS_H_
