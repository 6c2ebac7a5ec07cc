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

#ifndef FDP_SRC_KERNELS_INTERNAL_H_
#define FDP_SRC_KERNELS_INTERNAL_H_

#include "fdp/kernels.h"

namespace fdp::kernels::internal {

const KernelTable& ScalarTable();
#if defined(FDP_HAVE_AVX2)
const KernelTable& Avx2Table();
#endif

}  // namespace fdp::kernels::internal

#endif  // FDP_SRC_KERNELS_INTERNAL_H_
