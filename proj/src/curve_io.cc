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

#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "fdp/tradeoff.h"

namespace fdp {

void WriteCurveCsv(const TradeoffCurve& curve, std::ostream& out) {
  out << "alpha,f\n";
  char line[64];
  for (std::size_t i = 0; i < curve.size(); ++i) {
    std::snprintf(line, sizeof(line), "%.17g,%.17g\n", curve.alphas()[i],
                  curve.values()[i]);
    out << line;
  }
}

absl::StatusOr<TradeoffCurve> ReadCurveCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) ||
      absl::StripAsciiWhitespace(line).substr(0, 7) != "alpha,f") {
    return absl::InvalidArgumentError("curve CSV must start with 'alpha,f'");
  }
  std::vector<double> alphas;
  std::vector<double> values;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    const absl::string_view trimmed = absl::StripAsciiWhitespace(line);
    if (trimmed.empty()) continue;
    const std::vector<absl::string_view> cells = absl::StrSplit(trimmed, ',');
    double a = 0.0;
    double v = 0.0;
    if (cells.size() < 2 || !absl::SimpleAtod(cells[0], &a) ||
        !absl::SimpleAtod(cells[1], &v)) {
      return absl::InvalidArgumentError(
          absl::StrCat("malformed curve CSV row ", row));
    }
    alphas.push_back(a);
    values.push_back(v);
  }
  return TradeoffCurve::Create(std::move(alphas), std::move(values));
}

std::string CurveToJson(const TradeoffCurve& curve) {
  nlohmann::json doc;
  doc["alphas"] = std::vector<double>(curve.alphas().begin(),
                                      curve.alphas().end());
  doc["values"] = std::vector<double>(curve.values().begin(),
                                      curve.values().end());
  return doc.dump();
}

absl::StatusOr<TradeoffCurve> CurveFromJson(const std::string& text) {
  const nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("alphas") ||
      !doc.contains("values") || !doc["alphas"].is_array() ||
      !doc["values"].is_array()) {
    return absl::InvalidArgumentError(
        "curve JSON needs array fields 'alphas' and 'values'");
  }
  std::vector<double> alphas;
  std::vector<double> values;
  for (const auto& x : doc["alphas"]) {
    if (!x.is_number()) return absl::InvalidArgumentError("non-numeric alpha");
    alphas.push_back(x.get<double>());
  }
  for (const auto& x : doc["values"]) {
    if (!x.is_number()) return absl::InvalidArgumentError("non-numeric value");
    values.push_back(x.get<double>());
  }
  return TradeoffCurve::Create(std::move(alphas), std::move(values));
}

}  // namespace fdp
