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

#ifndef FDP_PRV_H_
#define FDP_PRV_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <variant>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace fdp {

struct GridSpec {
  double mesh = 1e-3;
  // Probability left outside the grid when a single factor is discretized.
  double factor_tail = 1e-15;
  // Half-width of a composed grid in standard deviations.
  double window_sd = 12.0;
  // Total truncated mass tolerated before evaluation fails.
  double tail_budget = 1e-8;
  // Shift each factor so its discrete mean equals the truncated true mean.
  bool mean_correction = true;
};

absl::Status ValidateGridSpec(const GridSpec& spec);

// Discretized privacy-loss random variable Y: pmf[i] is the mass at loss
// origin + i * mesh. tail_mass is probability dropped by truncation.
struct PrvGrid {
  double mesh = 0.0;
  double origin = 0.0;
  std::vector<double> pmf;
  double tail_mass = 0.0;

  double lo() const { return origin; }
  double hi() const {
    return origin + mesh * static_cast<double>(pmf.size() - 1);
  }
  double Loss(std::size_t i) const {
    return origin + mesh * static_cast<double>(i);
  }
  double Mean() const;
  double Variance() const;
  double TotalMass() const;
};

PrvGrid PointMassPrv(double mesh);

// Y ~ N(mu^2/2, mu^2). Requires mesh <= mu / 10 unless mu == 0.
absl::StatusOr<PrvGrid> PrvOfGdp(double mu, const GridSpec& spec = {});

// PRV of C_p(G(mu)); the atom at zero sits in the cell holding 0.
absl::StatusOr<PrvGrid> PrvOfSubsampledGdp(double mu, double p,
                                           const GridSpec& spec = {});

// Exact CDF and survival function of the subsampled-Gaussian PRV.
double SubsampledGdpLossCdf(double mu, double p, double t);
double SubsampledGdpLossSf(double mu, double p, double t);

absl::StatusOr<PrvGrid> SelfCompose(const PrvGrid& prv, std::int64_t k,
                                    const GridSpec& spec = {});

absl::StatusOr<PrvGrid> Convolve(const PrvGrid& a, const PrvGrid& b,
                                 const GridSpec& spec = {});

struct PrvDelta {
  double delta;           // includes tail_mass as one-sided slack
  double discretization;  // half the change of delta across one mesh cell
  double tail;
  double uncertainty() const { return discretization + tail; }
};

PrvDelta PrvDeltaAt(const PrvGrid& prv, double eps);

struct GdpFactor {
  double mu;
};

struct SubsampledGdpFactor {
  double mu;
  double p;
  std::int64_t multiplicity;
};

using CompositeFactor = std::variant<GdpFactor, SubsampledGdpFactor>;

// Product of GDP and subsampled-GDP tradeoff functions.
struct CompositeBound {
  std::vector<CompositeFactor> factors;
};

absl::Status ValidateComposite(const CompositeBound& cb);

absl::StatusOr<PrvGrid> ComposeToPrv(const CompositeBound& cb,
                                     const GridSpec& spec = {});

struct DeltaRow {
  double eps;
  double delta;
  double uncertainty;
};

absl::StatusOr<std::vector<DeltaRow>> EvaluateComposite(
    const CompositeBound& cb, std::span<const double> eps_list,
    const GridSpec& spec = {});

// Smallest eps on the query resolution with delta(eps) <= delta.
absl::StatusOr<double> PrvEpsAt(const PrvGrid& prv, double delta);

void WriteDeltaCsv(std::span<const DeltaRow> rows, std::ostream& out);

}  // namespace fdp

#endif  // FDP_PRV_H_
