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

#include "fdp/tables.h"

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "fdp/accountant.h"
#include "fdp/status_macros.h"

namespace fdp {
namespace {

// eta = 1, m = 1 - c, M = 1 + c gives contraction exactly c.
AlgoParams WithContraction(AlgoKind kind, double c) {
  AlgoParams p;
  p.kind = kind;
  p.eta = 1.0;
  p.m = 1.0 - c;
  p.M = 1.0 + c;
  return p;
}

constexpr double kScContractions[] = {0.92, 0.96, 0.98, 0.99, 0.995};
constexpr double kCgdContractions[] = {0.98, 0.99, 0.995};
constexpr std::int64_t kBatchCounts[] = {10, 20, 40};

}  // namespace

absl::StatusOr<Table> GdScTable() {
  Table table{"gd-sc", {"t", "c", "mu", "composition"}, {}};
  for (const std::int64_t t : {10, 100, 1000}) {
    for (const double c : kScContractions) {
      AlgoParams p = WithContraction(AlgoKind::kGd, c);
      p.L = 1.0;
      p.n = 10;
      p.sigma = 1.0;
      p.steps = t;
      FDP_ASSIGN_OR_RETURN(const double mu, BoundGdSc(p));
      FDP_ASSIGN_OR_RETURN(const double comp, BoundGdComposition(p));
      table.rows.push_back({static_cast<double>(t), c, mu, comp});
    }
  }
  return table;
}

absl::StatusOr<Table> CgdScTable() {
  Table table{"cgd-sc", {"l", "c", "E", "mu", "composition"}, {}};
  for (const std::int64_t l : kBatchCounts) {
    for (const double c : kCgdContractions) {
      for (const std::int64_t E : {5, 50, 500}) {
        AlgoParams p = WithContraction(AlgoKind::kCgd, c);
        p.L = 0.2;
        p.b = 1;
        p.n = l;
        p.sigma = 1.0;
        p.epochs = E;
        FDP_ASSIGN_OR_RETURN(const double mu, BoundCgdSc(p));
        FDP_ASSIGN_OR_RETURN(const double comp, BoundCgdComposition(p));
        table.rows.push_back({static_cast<double>(l), c,
                              static_cast<double>(E), mu, comp});
      }
    }
  }
  return table;
}

absl::StatusOr<Table> GdProjTable() {
  Table table{"gd-proj", {"L_over_n", "eta", "t_star", "mu_star"}, {}};
  constexpr std::int64_t n = 4;
  constexpr double sigma = 8.0;
  for (const double ln : {0.25, 0.5, 1.0}) {
    for (const double eta : {0.2, 0.1, 0.05}) {
      AlgoParams p;
      p.kind = AlgoKind::kGd;
      p.constrained = true;
      p.eta = eta;
      p.L = ln * n;
      p.n = n;
      p.D = 1.0;
      p.sigma = sigma;
      // Any t past the threshold lands on the plateau.
      p.steps = 1 << 20;
      FDP_ASSIGN_OR_RETURN(const double mu, BoundGdProj(p));
      FDP_ASSIGN_OR_RETURN(const std::int64_t t_star,
                           CrossoverStep(mu, ln / sigma));
      table.rows.push_back({ln, eta, static_cast<double>(t_star), mu});
    }
  }
  return table;
}

absl::StatusOr<Table> CgdProjTable() {
  Table table{
      "cgd-proj", {"l", "L_over_b", "eta", "E_crossover", "mu_star"}, {}};
  constexpr double sigma = 3.0;
  for (const std::int64_t l : kBatchCounts) {
    for (const double lb : {0.25, 0.5, 1.0}) {
      for (const double eta : {0.04, 0.02, 0.01}) {
        AlgoParams p;
        p.kind = AlgoKind::kCgd;
        p.constrained = true;
        p.eta = eta;
        p.L = lb;
        p.b = 1;
        p.n = l;
        p.D = 1.0;
        p.sigma = sigma;
        p.epochs = 1 << 16;
        FDP_ASSIGN_OR_RETURN(const double mu, BoundCgdProj(p));
        FDP_ASSIGN_OR_RETURN(const std::int64_t e_cross,
                             CrossoverStep(mu, lb / sigma));
        table.rows.push_back({static_cast<double>(l), lb, eta,
                              static_cast<double>(e_cross), mu});
      }
    }
  }
  return table;
}

std::vector<std::string> TableNames() {
  return {"gd-sc", "cgd-sc", "gd-proj", "cgd-proj"};
}

absl::StatusOr<Table> TableByName(const std::string& name) {
  if (name == "gd-sc") return GdScTable();
  if (name == "cgd-sc") return CgdScTable();
  if (name == "gd-proj") return GdProjTable();
  if (name == "cgd-proj") return CgdProjTable();
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown table '", name, "'; expected one of ",
      absl::StrJoin(TableNames(), ", ")));
}

void WriteTableCsv(const Table& table, std::ostream& out) {
  out << absl::StrJoin(table.header, ",") << "\n";
  char buf[32];
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", row[i]);
      out << (i ? "," : "") << buf;
    }
    out << "\n";
  }
}

}  // namespace fdp
