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
#include <cmath>

#include "instaboost/simd/kernels.hpp"

namespace instaboost::simd {
namespace {

void ring_accumulate_scalar(const float* r, const float* g, const float* b, const float* valid,
                            float cr, float cg, float cb, double* sum, float* count,
                            std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const float dr = cr - r[k];
    const float dg = cg - g[k];
    const float db = cb - b[k];
    const float sq = dr * dr + dg * dg + db * db;
    const float d = std::sqrt(sq) * valid[k];
    sum[k] += static_cast<double>(d);
    count[k] += valid[k];
  }
}

float jacobi_row_scalar(const float* up, const float* mid, const float* down, const float* hole,
                        float* out, std::size_t n) {
  float max_change = 0.0f;
  for (std::size_t k = 0; k < n; ++k) {
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
const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::Scalar, &ring_accumulate_scalar, &jacobi_row_scalar};
  return table;
}
}  // namespace detail

}  // namespace instaboost::simd
