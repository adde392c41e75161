// Copyright 2026 The InstaBoost Authors. All Rights Reserved.
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
#include <atomic>
#include <cstdlib>
#include <string>

#include "instaboost/core.hpp"
#include "instaboost/simd/kernels.hpp"

namespace instaboost::simd {
namespace {

std::atomic<const KernelTable*> g_active{nullptr};

Isa best_isa() {
  if (isa_supported(Isa::Avx2)) return Isa::Avx2;
  if (isa_supported(Isa::Neon)) return Isa::Neon;
  return Isa::Scalar;
}

Isa initial_isa() {
  if (const char* env = std::getenv("INSTABOOST_SIMD")) {
    const std::string name(env);
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
      if (name == isa_name(isa) && isa_supported(isa)) return isa;
    }
  }
  return best_isa();
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(INSTABOOST_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(INSTABOOST_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

std::vector<Isa> supported_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
    if (isa_supported(isa)) out.push_back(isa);
  }
  return out;
}

const KernelTable& kernels_for(Isa isa) {
  if (!isa_supported(isa)) {
    throw Error(ErrorKind::InvalidArgument,
                "kernel variant not supported here: " + std::string(isa_name(isa)));
  }
  switch (isa) {
#if defined(INSTABOOST_HAVE_AVX2)
    case Isa::Avx2: return detail::avx2_kernels();
#endif
#if defined(INSTABOOST_HAVE_NEON)
    case Isa::Neon: return detail::neon_kernels();
#endif
    default: return detail::scalar_kernels();
  }
}

const KernelTable& active_kernels() {
  const KernelTable* table = g_active.load(std::memory_order_acquire);
  if (table == nullptr) {
    table = &kernels_for(initial_isa());
    const KernelTable* expected = nullptr;
    if (!g_active.compare_exchange_strong(expected, table, std::memory_order_acq_rel)) {
      table = expected;
    }
  }
  return *table;
}

void set_active_isa(Isa isa) { g_active.store(&kernels_for(isa), std::memory_order_release); }

}  // namespace instaboost::simd
