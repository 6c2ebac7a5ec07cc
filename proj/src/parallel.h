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

#ifndef FDP_SRC_PARALLEL_H_
#define FDP_SRC_PARALLEL_H_

#include <cstdint>
#include <functional>

namespace fdp::internal {

// Worker count: FDP_ACCOUNTANT_THREADS when set to a positive integer,
// otherwise the hardware concurrency.
int WorkerCount();

// Runs body(i) for i in [0, count) on up to WorkerCount() threads. Each index
// runs exactly once; callers write results into per-index slots.
void ParallelFor(std::int64_t count,
                 const std::function<void(std::int64_t)>& body);

}  // namespace fdp::internal

#endif  // FDP_SRC_PARALLEL_H_
