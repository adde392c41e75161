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
#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference and
// optional AVX2 / NEON variants; the variant is picked at runtime from the
// CPU features. All variants evaluate the same float operations in the same
// order (no FMA contraction), so their outputs are bit-identical.

#include <cstddef>
#include <string_view>
#include <vector>

namespace instaboost::simd {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);

/// For each lane k < n:
///   d = sqrt((cr - r[k])^2 + (cg - g[k])^2 + (cb - b[k])^2) * valid[k]
///   sum[k] += double(d);  count[k] += valid[k]
/// `valid` holds 0.0f or 1.0f.
using RingAccumulateFn = void (*)(const float* r, const float* g, const float* b,
                                  const float* valid, float cr, float cg, float cb, double* sum,
                                  float* count, std::size_t n);

/// One Jacobi row update of the 5-point Laplace stencil:
///   out[k] = mid[k] + hole[k] * (0.25 * (up[k] + down[k] + mid[k-1] + mid[k+1]) - mid[k])
/// `mid` must be readable at [-1, n]. Returns max |out[k] - mid[k]|.
using JacobiRowFn = float (*)(const float* up, const float* mid, const float* down,
                              const float* hole, float* out, std::size_t n);

struct KernelTable {
  Isa isa;
  RingAccumulateFn ring_accumulate;
  JacobiRowFn jacobi_row;
};

bool isa_supported(Isa isa);

/// All variants usable on this machine, scalar first.
std::vector<Isa> supported_isas();

/// Kernels for a specific variant; throws InvalidArgument if unsupported.
const KernelTable& kernels_for(Isa isa);

/// Best supported variant, unless the INSTABOOST_SIMD environment variable
/// names another one ("scalar", "avx2", "neon").
const KernelTable& active_kernels();

/// Overrides the active variant for the whole process.
void set_active_isa(Isa isa);

namespace detail {
const KernelTable& scalar_kernels();
#if defined(INSTABOOST_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif
#if defined(INSTABOOST_HAVE_NEON)
const KernelTable& neon_kernels();
#endif
}  // namespace detail

}  // namespace instaboost::simd
