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

// Published three-digit reference values for the bound tables.

#ifndef FDP_TESTS_REFERENCE_VALUES_H_
#define FDP_TESTS_REFERENCE_VALUES_H_

namespace fdp::testing {

// Rows t = 10, 100, 1000; columns c = 0.92, 0.96, 0.98, 0.99, 0.995.
inline constexpr double kGdScMu[3][5] = {
    {0.308, 0.314, 0.316, 0.316, 0.316},
    {0.490, 0.688, 0.871, 0.961, 0.990},
    {0.490, 0.700, 0.995, 1.411, 1.984},
};
inline constexpr double kGdScComposition[3] = {0.316, 1.000, 3.162};

// [l = 10, 20, 40][c = 0.98, 0.99, 0.995][E = 5, 50, 500].
inline constexpr double kCgdScMu[3][3][3] = {
    {{0.229, 0.270, 0.270}, {0.233, 0.334, 0.336}, {0.235, 0.410, 0.439}},
    {{0.211, 0.216, 0.216}, {0.215, 0.237, 0.237}, {0.217, 0.275, 0.276}},
    {{0.202, 0.203, 0.203}, {0.205, 0.208, 0.208}, {0.208, 0.219, 0.219}},
};
inline constexpr double kCgdScComposition[3] = {0.447, 1.414, 4.472};

// [L/n = 0.25, 0.5, 1][eta = 0.2, 0.1, 0.05] as (t*, mu*).
inline constexpr double kGdProjTStar[3][3] = {
    {80, 160, 320}, {40, 80, 160}, {20, 40, 80}};
inline constexpr double kGdProjMu[3][3] = {
    {0.280, 0.395, 0.559}, {0.395, 0.559, 0.791}, {0.559, 0.791, 1.118}};

// [l = 10, 20, 40][L/b = 0.25, 0.5, 1][eta = 0.04, 0.02, 0.01].
inline constexpr double kCgdProjMu[3][3][3] = {
    {{0.534, 0.750, 1.057}, {0.764, 1.067, 1.500}, {1.106, 1.528, 2.134}},
    {{0.382, 0.534, 0.750}, {0.553, 0.764, 1.067}, {0.816, 1.106, 1.528}},
    {{0.276, 0.382, 0.534}, {0.408, 0.553, 0.764}, {0.624, 0.816, 1.106}},
};

inline constexpr double kTableTolerance = 1e-3;

}  // namespace fdp::testing

#endif  // FDP_TESTS_REFERENCE_VALUES_H_
