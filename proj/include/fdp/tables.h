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

// Reference tables of GDP parameters for the full-batch and cyclic
// optimizers. Each table is emitted in long form, one row per cell.

#ifndef FDP_TABLES_H_
#define FDP_TABLES_H_

#include <ostream>
#include <string>
#include <vector>

#include "absl/status/statusor.h"

namespace fdp {

struct Table {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

// Columns: t, c, mu, composition. L/(n sigma) = 0.1.
absl::StatusOr<Table> GdScTable();
// Columns: l, c, E, mu, composition. L/(b sigma) = 0.2.
absl::StatusOr<Table> CgdScTable();
// Columns: L_over_n, eta, t_star, mu_star. D = 1, sigma = 8.
absl::StatusOr<Table> GdProjTable();
// Columns: l, L_over_b, eta, E_crossover, mu_star. D = 1, sigma = 3.
absl::StatusOr<Table> CgdProjTable();

std::vector<std::string> TableNames();
absl::StatusOr<Table> TableByName(const std::string& name);

void WriteTableCsv(const Table& table, std::ostream& out);

}  // namespace fdp

#endif  // FDP_TABLES_H_
