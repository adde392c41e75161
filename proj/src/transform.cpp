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
#include "instaboost/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace instaboost {
namespace {

// Sample positions this close to the pixel grid are treated as aligned, so
// identity and integer shifts copy pixels exactly.
constexpr double kGridSnap = 1e-9;

double snap(double v) {
  const double r = std::round(v);
  return std::fabs(v - r) < kGridSnap ? r : v;
}

double radians(double degrees) { return degrees * std::numbers::pi / 180.0; }

}  // namespace

Matrix3 affine_matrix(const AffineTuple& t) {
  const double r = radians(t.rotation_deg);
  const double c = t.scale * std::cos(r);
  const double s = t.scale * std::sin(r);
  return {{{c, s, t.tx}, {-s, c, t.ty}, {0.0, 0.0, 1.0}}};
}

Matrix3 multiply(const Matrix3& a, const Matrix3& b) {
  Matrix3 out{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double acc = 0.0;
      for (int k = 0; k < 3; ++k) acc += a[i][k] * b[k][j];
      out[i][j] = acc;
    }
  }
  return out;
}

void check(const JitterConfig& cfg) {
  if (!(cfg.translation_ratio >= 0.0) || !std::isfinite(cfg.translation_ratio)) {
    throw Error(ErrorKind::InvalidArgument, "translation_ratio must be >= 0");
  }
  if (!(cfg.scale_range.lo > 0.0) || !(cfg.scale_range.lo <= cfg.scale_range.hi) ||
      !std::isfinite(cfg.scale_range.hi)) {
    throw Error(ErrorKind::InvalidArgument, "scale_range must be a non-empty interval in (0, inf)");
  }
  if (!(cfg.rotation_range_deg.lo <= cfg.rotation_range_deg.hi) ||
      !std::isfinite(cfg.rotation_range_deg.lo) || !std::isfinite(cfg.rotation_range_deg.hi)) {
    throw Error(ErrorKind::InvalidArgument, "rotation_range_deg must be a non-empty interval");
  }
}

AffineTuple sample_jitter(Rng& rng, double object_width, double object_height,
                          const JitterConfig& cfg) {
  if (!(object_width > 0.0) || !(object_height > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "object size must be positive");
  }
  check(cfg);
  const double dx = object_width * cfg.translation_ratio;
  const double dy = object_height * cfg.translation_ratio;
  AffineTuple t;
  t.tx = uniform(rng, -dx, dx);
  t.ty = uniform(rng, -dy, dy);
  t.scale = uniform(rng, cfg.scale_range.lo, cfg.scale_range.hi);
  t.rotation_deg = uniform(rng, cfg.rotation_range_deg.lo, cfg.rotation_range_deg.hi);
  return t;
}

AlphaInstancePatch warp_patch(const AlphaInstancePatch& patch, const AffineTuple& t,
                              int canvas_width, int canvas_height) {
  if (!(t.scale > 0.0) || !std::isfinite(t.scale) || !std::isfinite(t.tx) ||
      !std::isfinite(t.ty) || !std::isfinite(t.rotation_deg)) {
    throw Error(ErrorKind::InvalidArgument, "affine tuple needs finite components and scale > 0");
  }
  const Matrix3 h = affine_matrix(t);
  const double a = h[0][0], b = h[0][1], c = h[1][0], d = h[1][1];
  const double det = a * d - b * c;
  // Inverse of the 2x2 block.
  const double ia = d / det, ib = -b / det, ic = -c / det, id = a / det;
  const Point2d center = patch.center;

  // Forward-map the patch footprint to find the output window.
  double qx_min = 1e300, qx_max = -1e300, qy_min = 1e300, qy_max = -1e300;
  for (double px : {patch.origin.x - 0.5, patch.origin.x + patch.width() - 0.5}) {
    for (double py : {patch.origin.y - 0.5, patch.origin.y + patch.height() - 0.5}) {
      const double dx = px - center.x, dy = py - center.y;
      const double qx = center.x + a * dx + b * dy + t.tx;
      const double qy = center.y + c * dx + d * dy + t.ty;
      qx_min = std::min(qx_min, qx);
      qx_max = std::max(qx_max, qx);
      qy_min = std::min(qy_min, qy);
      qy_max = std::max(qy_max, qy);
    }
  }
  const int x0 = std::max(0, static_cast<int>(std::floor(qx_min)));
  const int y0 = std::max(0, static_cast<int>(std::floor(qy_min)));
  const int x1 = std::min(canvas_width - 1, static_cast<int>(std::ceil(qx_max)));
  const int y1 = std::min(canvas_height - 1, static_cast<int>(std::ceil(qy_max)));
  if (x1 < x0 || y1 < y0) throw Error(ErrorKind::FullyClipped, "patch lands outside the canvas");

  const int w = x1 - x0 + 1, h_out = y1 - y0 + 1;
  PlaneF red(w, h_out), green(w, h_out), blue(w, h_out), alpha(w, h_out);
  int kx0 = w, ky0 = h_out, kx1 = -1, ky1 = -1;

  for (int oy = 0; oy < h_out; ++oy) {
    for (int ox = 0; ox < w; ++ox) {
      const double qx = x0 + ox - center.x - t.tx;
      const double qy = y0 + oy - center.y - t.ty;
      const double u = snap(center.x + ia * qx + ib * qy - patch.origin.x);
      const double v = snap(center.y + ic * qx + id * qy - patch.origin.y);
      const double uf = std::floor(u), vf = std::floor(v);
      const int u0 = static_cast<int>(uf), v0 = static_cast<int>(vf);
      const double fx = u - uf, fy = v - vf;

      float out_a = 0.0f, out_r = 0.0f, out_g = 0.0f, out_b = 0.0f;
      if (fx == 0.0 && fy == 0.0) {
        if (patch.alpha.contains(u0, v0)) {
          out_a = patch.alpha(u0, v0);
          out_r = patch.red(u0, v0);
          out_g = patch.green(u0, v0);
          out_b = patch.blue(u0, v0);
        }
      } else {
        double sa = 0.0, sr = 0.0, sg = 0.0, sb = 0.0;
        const double wts[4] = {(1 - fx) * (1 - fy), fx * (1 - fy), (1 - fx) * fy, fx * fy};
        const int us[4] = {u0, u0 + 1, u0, u0 + 1};
        const int vs[4] = {v0, v0, v0 + 1, v0 + 1};
        for (int k = 0; k < 4; ++k) {
          if (wts[k] == 0.0 || !patch.alpha.contains(us[k], vs[k])) continue;
          const double wa = wts[k] * patch.alpha(us[k], vs[k]);
          sa += wa;
          sr += wa * patch.red(us[k], vs[k]);
          sg += wa * patch.green(us[k], vs[k]);
          sb += wa * patch.blue(us[k], vs[k]);
        }
        if (sa > 0.0) {
          out_a = static_cast<float>(std::min(sa, 1.0));
          out_r = static_cast<float>(sr / sa);
          out_g = static_cast<float>(sg / sa);
          out_b = static_cast<float>(sb / sa);
        }
      }
      alpha(ox, oy) = out_a;
      red(ox, oy) = out_r;
      green(ox, oy) = out_g;
      blue(ox, oy) = out_b;
      if (out_a > 0.0f) {
        kx0 = std::min(kx0, ox);
        kx1 = std::max(kx1, ox);
        ky0 = std::min(ky0, oy);
        ky1 = std::max(ky1, oy);
      }
    }
  }
  if (kx1 < 0) throw Error(ErrorKind::FullyClipped, "no visible alpha after warping");

  AlphaInstancePatch out;
  out.origin = {x0 + kx0, y0 + ky0};
  out.center = {center.x + t.tx, center.y + t.ty};
  out.source_annotation_id = patch.source_annotation_id;
  const int cw = kx1 - kx0 + 1, ch = ky1 - ky0 + 1;
  out.red = PlaneF(cw, ch);
  out.green = PlaneF(cw, ch);
  out.blue = PlaneF(cw, ch);
  out.alpha = PlaneF(cw, ch);
  for (int y = 0; y < ch; ++y) {
    for (int x = 0; x < cw; ++x) {
      out.red(x, y) = red(kx0 + x, ky0 + y);
      out.green(x, y) = green(kx0 + x, ky0 + y);
      out.blue(x, y) = blue(kx0 + x, ky0 + y);
      out.alpha(x, y) = alpha(kx0 + x, ky0 + y);
    }
  }
  return out;
}

BinaryMask alpha_to_mask(const AlphaInstancePatch& patch, int canvas_width, int canvas_height,
                         double alpha_threshold) {
  BinaryMask mask(canvas_width, canvas_height, 0);
  for (int y = 0; y < patch.height(); ++y) {
    for (int x = 0; x < patch.width(); ++x) {
      const int cx = patch.origin.x + x, cy = patch.origin.y + y;
      if (mask.contains(cx, cy) && patch.alpha(x, y) > alpha_threshold) mask(cx, cy) = 1;
    }
  }
  return mask;
}

std::size_t count_alpha_positive(const AlphaInstancePatch& patch) {
  return static_cast<std::size_t>(std::count_if(patch.alpha.values().begin(), patch.alpha.values().end(),
                                                [](float a) { return a > 0.0f; }));
}

InstanceAnnotation transform_annotation(const InstanceAnnotation& ann,
                                        const AlphaInstancePatch& warped, int canvas_width,
                                        int canvas_height, std::int64_t new_id,
                                        double alpha_threshold) {
  const BinaryMask mask = alpha_to_mask(warped, canvas_width, canvas_height, alpha_threshold);
  const std::size_t area = count_foreground(mask);
  if (area == 0) {
    throw Error(ErrorKind::EmptyResult,
                "annotation " + std::to_string(ann.id) + " has no pixel above the alpha threshold");
  }
  InstanceAnnotation out = ann;
  out.id = new_id;
  out.segmentation = Segmentation{{}, rle_encode(mask, true)};
  out.bbox = mask_to_bbox(mask);
  out.area = static_cast<double>(area);
  return out;
}

void composite_over(Image& canvas, const AlphaInstancePatch& patch) {
  for (int y = 0; y < patch.height(); ++y) {
    const int cy = patch.origin.y + y;
    if (cy < 0 || cy >= canvas.height()) continue;
    for (int x = 0; x < patch.width(); ++x) {
      const int cx = patch.origin.x + x;
      if (cx < 0 || cx >= canvas.width()) continue;
      const float a = patch.alpha(x, y);
      if (a <= 0.0f) continue;
      std::uint8_t* px = canvas.at(cx, cy);
      const float fg[3] = {patch.red(x, y), patch.green(x, y), patch.blue(x, y)};
      for (int c = 0; c < 3; ++c) {
        const float v = a >= 1.0f ? fg[c] : a * fg[c] + (1.0f - a) * static_cast<float>(px[c]);
        px[c] = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
      }
    }
  }
}

}  // namespace instaboost
