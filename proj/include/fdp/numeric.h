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

#ifndef FDP_NUMERIC_H_
#define FDP_NUMERIC_H_

#include <cmath>
#include <cstdint>
#include <functional>

namespace fdp {

// Ceiling that snaps values within a relative 1e-9 of an integer onto that
// integer, so that e.g. 1 / (0.1 * 0.5) evaluates to 20 and not 21.
std::int64_t CeilSnapped(double x);

// Finds a root of a function with f(lo) and f(hi) of opposite sign (or zero).
// Stops once the bracket is narrower than `x_tol` or |f| <= `f_tol`.
double Bisect(const std::function<double(double)>& f, double lo, double hi,
              double x_tol = 1e-15, double f_tol = 0.0, int max_iter = 400);

struct ScalarMinimum {
  double x;
  double value;
};

// Golden-section search for the minimum of a unimodal function on [lo, hi].
ScalarMinimum GoldenSectionMinimize(const std::function<double(double)>& f,
                                    double lo, double hi, double x_tol = 1e-10,
                                    int max_iter = 300);

}  // namespace fdp

#endif  // FDP_NUMERIC_H_
