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

#ifndef FDP_NORMAL_H_
#define FDP_NORMAL_H_

namespace fdp {

// Standard normal density.
double NormalPdf(double x);

// Standard normal CDF Phi(x). Accurate in both tails; underflows to zero only
// below x ~ -38.
double NormalCdf(double x);

// log Phi(x). Switches to the asymptotic tail series far below zero so that
// very negative arguments stay finite.
double LogNormalCdf(double x);

// Phi^{-1}(p) for p in [0, 1]; returns -inf / +inf at the endpoints.
double NormalQuantile(double p);

// Phi^{-1}(1 - q), computed without forming 1 - q so small q keeps full
// relative precision.
double NormalUpperQuantile(double q);

}  // namespace fdp

#endif  // FDP_NORMAL_H_
