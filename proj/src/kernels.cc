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

#include "fdp/kernels.h"

#include <cstdlib>
#include <string_view>

#include "kernels_internal.h"

namespace fdp::kernels {
namespace {

bool CpuHasAvx2() {
#if defined(FDP_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

bool ForcedScalar() {
  const char* env = std::getenv("FDP_SIMD");
  return env != nullptr && std::string_view(env) == "scalar";
}

}  // namespace

std::string_view IsaName(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

const KernelTable& ScalarKernels() { return internal::ScalarTable(); }

const KernelTable* Avx2Kernels() {
#if defined(FDP_HAVE_AVX2)
  static const bool supported = CpuHasAvx2();
  return supported ? &internal::Avx2Table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& Active() {
  static const KernelTable* table = [] {
    const KernelTable* avx2 = Avx2Kernels();
    if (avx2 != nullptr && !ForcedScalar()) return avx2;
    return &internal::ScalarTable();
  }();
  return *table;
}

}  // namespace fdp::kernels
