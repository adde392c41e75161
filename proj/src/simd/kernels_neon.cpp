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

// AArch64 only; NEON is part of the base ISA there.

#include <arm_neon.h>

#include <cmath>

#include "instaboost/simd/kernels.hpp"

namespace instaboost::simd {
namespace {

void ring_accumulate_neon(const float* r, const float* g, const float* b, const float* valid,
                          float cr, float cg, float cb, double* sum, float* count,
                          std::size_t n) {
  const float32x4_t vcr = vdupq_n_f32(cr);
  const float32x4_t vcg = vdupq_n_f32(cg);
  const float32x4_t vcb = vdupq_n_f32(cb);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const float32x4_t dr = vsubq_f32(vcr, vld1q_f32(r + k));
    const float32x4_t dg = vsubq_f32(vcg, vld1q_f32(g + k));
    const float32x4_t db = vsubq_f32(vcb, vld1q_f32(b + k));
    float32x4_t sq = vaddq_f32(vmulq_f32(dr, dr), vmulq_f32(dg, dg));
    sq = vaddq_f32(sq, vmulq_f32(db, db));
    const float32x4_t v = vld1q_f32(valid + k);
    const float32x4_t d = vmulq_f32(vsqrtq_f32(sq), v);
    const float64x2_t lo = vcvt_f64_f32(vget_low_f32(d));
    const float64x2_t hi = vcvt_high_f64_f32(d);
    vst1q_f64(sum + k, vaddq_f64(vld1q_f64(sum + k), lo));
    vst1q_f64(sum + k + 2, vaddq_f64(vld1q_f64(sum + k + 2), hi));
    vst1q_f32(count + k, vaddq_f32(vld1q_f32(count + k), v));
  }
  for (; k < n; ++k) {
    const float dr = cr - r[k];
    const float dg = cg - g[k];
    const float db = cb - b[k];
    const float sq = dr * dr + dg * dg + db * db;
    const float d = std::sqrt(sq) * valid[k];
    sum[k] += static_cast<double>(d);
    count[k] += valid[k];
  }
}

float jacobi_row_neon(const float* up, const float* mid, const float* down, const float* hole,
                      float* out, std::size_t n) {
  const float32x4_t quarter = vdupq_n_f32(0.25f);
  float32x4_t vmax = vdupq_n_f32(0.0f);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const float32x4_t c = vld1q_f32(mid + k);
    const float32x4_t vertical = vaddq_f32(vld1q_f32(up + k), vld1q_f32(down + k));
    const float32x4_t horizontal = vaddq_f32(vld1q_f32(mid + k - 1), vld1q_f32(mid + k + 1));
    const float32x4_t neighbours = vaddq_f32(vertical, horizontal);
    const float32x4_t delta =
        vmulq_f32(vld1q_f32(hole + k), vsubq_f32(vmulq_f32(quarter, neighbours), c));
    const float32x4_t updated = vaddq_f32(c, delta);
    vst1q_f32(out + k, updated);
    vmax = vmaxq_f32(vmax, vabsq_f32(vsubq_f32(updated, c)));
  }
  float max_change = vmaxvq_f32(vmax);
  for (; k < n; ++k) {
    const float neighbours = (up[k] + down[k]) + (mid[k - 1] + mid[k + 1]);
    const float delta = hole[k] * (0.25f * neighbours - mid[k]);
    out[k] = mid[k] + delta;
    const float change = std::fabs(out[k] - mid[k]);
    max_change = change > max_change ? change : max_change;
  }
  return max_change;
}

}  // namespace

namespace detail {
const KernelTable& neon_kernels() {
  static const KernelTable table{Isa::Neon, &ring_accumulate_neon, &jacobi_row_neon};
  return table;
}
}  // namespace detail

}  // namespace instaboost::simd
