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

#include <array>
#include <cstdint>

#include "instaboost/annotations.hpp"
#include "instaboost/core.hpp"
#include "instaboost/maskops.hpp"

namespace instaboost {

/// Placement of an instance: center shift (tx, ty) in pixels, scale s and
/// rotation r in degrees.
struct AffineTuple {
  double tx = 0.0;
  double ty = 0.0;
  double scale = 1.0;
  double rotation_deg = 0.0;

  static AffineTuple identity() { return {}; }
  friend bool operator==(const AffineTuple&, const AffineTuple&) = default;
};

using Matrix3 = std::array<std::array<double, 3>, 3>;

/// [[s cos r,  s sin r, tx],
///  [-s sin r, s cos r, ty],
///  [0,        0,       1]]
/// With y pointing down, positive r turns the patch counterclockwise on
/// screen: a point right of the center moves above it.
Matrix3 affine_matrix(const AffineTuple& t);
Matrix3 multiply(const Matrix3& a, const Matrix3& b);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct JitterConfig {
  double translation_ratio = 1.0 / 15.0;  // of object width (tx) / height (ty)
  Interval scale_range{0.8, 1.2};
  Interval rotation_range_deg{-5.0, 5.0};
};

void check(const JitterConfig& cfg);

/// Draws tx, ty, s, r independently and uniformly, in that order.
AffineTuple sample_jitter(Rng& rng, double object_width, double object_height,
                          const JitterConfig& cfg = {});

/// Resamples the patch under the affine map about its center (rotate and
/// scale around the centroid, then shift by (tx, ty)) using bilinear
/// interpolation of premultiplied color. The result is clipped to the
/// canvas. Throws FullyClipped when no alpha-positive pixel remains.
AlphaInstancePatch warp_patch(const AlphaInstancePatch& patch, const AffineTuple& t,
                              int canvas_width, int canvas_height);

/// Pixels of the patch with alpha strictly above the threshold, placed on a
/// canvas-sized mask.
BinaryMask alpha_to_mask(const AlphaInstancePatch& patch, int canvas_width, int canvas_height,
                         double alpha_threshold = 0.5);

std::size_t count_alpha_positive(const AlphaInstancePatch& patch);

/// Regenerates an annotation from a warped alpha plane: RLE mask of
/// {alpha > threshold}, tight bbox, pixel-count area. Category and image
/// links are kept and `new_id` is assigned. Throws EmptyResult.
InstanceAnnotation transform_annotation(const InstanceAnnotation& ann,
                                        const AlphaInstancePatch& warped, int canvas_width,
                                        int canvas_height, std::int64_t new_id,
                                        double alpha_threshold = 0.5);

/// out = alpha * patch + (1 - alpha) * out, rounded and clamped to 8 bits.
void composite_over(Image& canvas, const AlphaInstancePatch& patch);

}  // namespace instaboost
