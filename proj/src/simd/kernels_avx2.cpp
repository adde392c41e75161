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

// Built with -mavx2 and only reached after a runtime CPU check.

#include <immintrin.h>

#include <cmath>

#include "instaboost/simd/kernels.hpp"

namespace instaboost::simd {
namespace {

void ring_accumulate_avx2(const float* r, const float* g, const float* b, const float* valid,
                          float cr, float cg, float cb, double* sum, float* count,
                          std::size_t n) {
  const __m256 vcr = _mm256_set1_ps(cr);
  const __m256 vcg = _mm256_set1_ps(cg);
  const __m256 vcb = _mm256_set1_ps(cb);
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    const __m256 dr = _mm256_sub_ps(vcr, _mm256_loadu_ps(r + k));
    const __m256 dg = _mm256_sub_ps(vcg, _mm256_loadu_ps(g + k));
    const __m256 db = _mm256_sub_ps(vcb, _mm256_loadu_ps(b + k));
    // Same association as the scalar reference: (dr^2 + dg^2) + db^2.
    __m256 sq = _mm256_add_ps(_mm256_mul_ps(dr, dr), _mm256_mul_ps(dg, dg));
    sq = _mm256_add_ps(sq, _mm256_mul_ps(db, db));
    const __m256 v = _mm256_loadu_ps(valid + k);
    const __m256 d = _mm256_mul_ps(_mm256_sqrt_ps(sq), v);

    const __m256d lo = _mm256_cvtps_pd(_mm256_castps256_ps128(d));
    const __m256d hi = _mm256_cvtps_pd(_mm256_extractf128_ps(d, 1));
    _mm256_storeu_pd(sum + k, _mm256_add_pd(_mm256_loadu_pd(sum + k), lo));
    _mm256_storeu_pd(sum + k + 4, _mm256_add_pd(_mm256_loadu_pd(sum + k + 4), hi));
    _mm256_storeu_ps(count + k, _mm256_add_ps(_mm256_loadu_ps(count + k), v));
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

float jacobi_row_avx2(const float* up, const float* mid, const float* down, const float* hole,
                      float* out, std::size_t n) {
  const __m256 quarter = _mm256_set1_ps(0.25f);
  const __m256 sign_mask = _mm256_set1_ps(-0.0f);
  __m256 vmax = _mm256_setzero_ps();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    const __m256 c = _mm256_loadu_ps(mid + k);
    const __m256 vertical = _mm256_add_ps(_mm256_loadu_ps(up + k), _mm256_loadu_ps(down + k));
    const __m256 horizontal =
        _mm256_add_ps(_mm256_loadu_ps(mid + k - 1), _mm256_loadu_ps(mid + k + 1));
    const __m256 neighbours = _mm256_add_ps(vertical, horizontal);
    const __m256 delta =
        _mm256_mul_ps(_mm256_loadu_ps(hole + k), _mm256_sub_ps(_mm256_mul_ps(quarter, neighbours), c));
    const __m256 updated = _mm256_add_ps(c, delta);
    _mm256_storeu_ps(out + k, updated);
    vmax = _mm256_max_ps(vmax, _mm256_andnot_ps(sign_mask, _mm256_sub_ps(updated, c)));
  }
  alignas(32) float lanes[8];
  _mm256_store_ps(lanes, vmax);
  float max_change = 0.0f;
  for (float lane : lanes) {
    max_change = lane > max_change ? lane : max_change;
  }
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
const KernelTable& avx2_kernels() {
  static const KernelTable table{Isa::Avx2, &ring_accumulate_avx2, &jacobi_row_avx2};
  return table;
}
}  // namespace detail

}  // namespace instaboost::simd
