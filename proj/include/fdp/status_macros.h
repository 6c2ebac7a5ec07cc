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

#ifndef FDP_STATUS_MACROS_H_
#define FDP_STATUS_MACROS_H_

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define FDP_STATUS_CONCAT_INNER_(x, y) x##y
#define FDP_STATUS_CONCAT_(x, y) FDP_STATUS_CONCAT_INNER_(x, y)

#define FDP_RETURN_IF_ERROR(expr)          \
  do {                                     \
    const absl::Status _fdp_status = (expr); \
    if (!_fdp_status.ok()) return _fdp_status; \
  } while (0)

#define FDP_ASSIGN_OR_RETURN_IMPL_(tmp, lhs, rexpr) \
  auto tmp = (rexpr);                               \
  if (!tmp.ok()) return tmp.status();               \
  lhs = std::move(tmp).value()

// Evaluates an absl::StatusOr expression, returning its status on error and
// otherwise assigning the value to `lhs`.
#define FDP_ASSIGN_OR_RETURN(lhs, rexpr) \
  FDP_ASSIGN_OR_RETURN_IMPL_(            \
      FDP_STATUS_CONCAT_(_fdp_statusor_, __LINE__), lhs, rexpr)

#endif  // FDP_STATUS_MACROS_H_
