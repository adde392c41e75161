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
#include "instaboost/maskops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace instaboost {
namespace {

constexpr std::int32_t kFar = std::numeric_limits<std::int32_t>::max() / 2;

double shoelace(const Polygon& poly) {
  const std::size_t n = poly.size() / 2;
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    twice += poly[2 * i] * poly[2 * j + 1] - poly[2 * j] * poly[2 * i + 1];
  }
  return 0.5 * twice;
}

// One-dimensional squared distance transform of a sampled function
// (lower envelope of parabolas).
void squared_edt_1d(const float* f, float* d, int n, std::vector<int>& v, std::vector<float>& z) {
  constexpr float kInf = std::numeric_limits<float>::infinity();
  int k = 0;
  v[0] = 0;
  z[0] = -kInf;
  z[1] = kInf;
  for (int q = 1; q < n; ++q) {
    if (f[q] == kInf) continue;
    if (f[v[0]] == kInf) {
      v[0] = q;
      continue;
    }
    float s = 0.0f;
    while (true) {
      const int p = v[k];
      s = ((f[q] + static_cast<float>(q) * q) - (f[p] + static_cast<float>(p) * p)) /
          (2.0f * static_cast<float>(q - p));
      if (s <= z[k] && k > 0) {
        --k;
        continue;
      }
      break;
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kInf;
  }
  if (f[v[0]] == kInf) {
    std::fill(d, d + n, kInf);
    return;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < static_cast<float>(q)) ++k;
    const float dq = static_cast<float>(q - v[k]);
    d[q] = dq * dq + f[v[k]];
  }
}

}  // namespace

BinaryMask rasterize_polygons(const std::vector<Polygon>& polygons, int width, int height) {
  if (polygons.empty()) throw Error(ErrorKind::DegenerateGeometry, "no polygons");
  double total_area = 0.0;
  for (const auto& poly : polygons) {
    if (poly.size() < 6 || poly.size() % 2 != 0) {
      throw Error(ErrorKind::DegenerateGeometry,
                  "polygon with " + std::to_string(poly.size() / 2) + " vertices");
    }
    total_area += std::fabs(shoelace(poly));
  }
  if (total_area == 0.0) throw Error(ErrorKind::DegenerateGeometry, "zero-area polygon");

  BinaryMask mask(width, height, 0);
  std::vector<double> crossings;
  for (const auto& poly : polygons) {
    const std::size_t n = poly.size() / 2;
    double ymin = poly[1], ymax = poly[1];
    for (std::size_t i = 0; i < n; ++i) {
      ymin = std::min(ymin, poly[2 * i + 1]);
      ymax = std::max(ymax, poly[2 * i + 1]);
    }
    const int row_begin = std::max(0, static_cast<int>(std::floor(ymin - 0.5)));
    const int row_end = std::min(height, static_cast<int>(std::ceil(ymax + 0.5)));
    for (int j = row_begin; j < row_end; ++j) {
      const double yc = j + 0.5;
      crossings.clear();
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = (i + 1) % n;
        const double x1 = poly[2 * i], y1 = poly[2 * i + 1];
        const double x2 = poly[2 * k], y2 = poly[2 * k + 1];
        if ((y1 <= yc) != (y2 <= yc)) {
          crossings.push_back(x1 + (yc - y1) * (x2 - x1) / (y2 - y1));
        }
      }
      std::sort(crossings.begin(), crossings.end());
      std::uint8_t* row = mask.row(j);
      for (std::size_t c = 0; c + 1 < crossings.size(); c += 2) {
        // Pixel i is inside when its center i + 0.5 lies in [xa, xb).
        const int first = std::max(0, static_cast<int>(std::ceil(crossings[c] - 0.5)));
        const int last = std::min(width, static_cast<int>(std::ceil(crossings[c + 1] - 0.5)));
        for (int i = first; i < last; ++i) row[i] = 1;
      }
    }
  }
  return mask;
}

BinaryMask rasterize(const InstanceAnnotation& annotation, int width, int height) {
  const auto& seg = annotation.segmentation;
  if (seg.rle) {
    if (seg.rle->width != width || seg.rle->height != height) {
      throw Error(ErrorKind::InvalidArgument, "RLE size of annotation " +
                                                  std::to_string(annotation.id) +
                                                  " differs from the requested size");
    }
    return rle_decode(*seg.rle);
  }
  try {
    return rasterize_polygons(seg.polygons, width, height);
  } catch (const Error& e) {
    throw Error(e.kind(), "annotation " + std::to_string(annotation.id) + ": " + e.what());
  }
}

BBox mask_to_bbox(const BinaryMask& mask) {
  int x0 = mask.width(), y0 = mask.height(), x1 = -1, y1 = -1;
  for (int y = 0; y < mask.height(); ++y) {
    const std::uint8_t* row = mask.row(y);
    for (int x = 0; x < mask.width(); ++x) {
      if (row[x]) {
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
      }
    }
  }
  if (x1 < 0) throw Error(ErrorKind::EmptyMask, "bbox of an empty mask");
  return {static_cast<double>(x0), static_cast<double>(y0), static_cast<double>(x1 - x0 + 1),
          static_cast<double>(y1 - y0 + 1)};
}

Point2d mask_centroid(const BinaryMask& mask) {
  // Per-column and per-row counts keep the inner loop free of multiplies.
  std::vector<std::uint32_t> columns(static_cast<std::size_t>(mask.width()), 0);
  double sx = 0.0, sy = 0.0;
  std::uint64_t n = 0;
  for (int y = 0; y < mask.height(); ++y) {
    const std::uint8_t* row = mask.row(y);
    std::uint32_t row_n = 0;
    for (int x = 0; x < mask.width(); ++x) {
      const std::uint32_t b = row[x] != 0;
      columns[x] += b;
      row_n += b;
    }
    n += row_n;
    sy += static_cast<double>(row_n) * y;
  }
  if (n == 0) throw Error(ErrorKind::EmptyMask, "centroid of an empty mask");
  for (int x = 0; x < mask.width(); ++x) sx += static_cast<double>(columns[x]) * x;
  return {sx / static_cast<double>(n), sy / static_cast<double>(n)};
}

Grid<std::int32_t> chebyshev_distance(const BinaryMask& mask) {
  const int w = mask.width(), h = mask.height();
  Grid<std::int32_t> d(w, h, kFar);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (mask(x, y)) {
        d(x, y) = 0;
        continue;
      }
      std::int32_t best = d(x, y);
      if (x > 0) best = std::min(best, d(x - 1, y) + 1);
      if (y > 0) {
        best = std::min(best, d(x, y - 1) + 1);
        if (x > 0) best = std::min(best, d(x - 1, y - 1) + 1);
        if (x + 1 < w) best = std::min(best, d(x + 1, y - 1) + 1);
      }
      d(x, y) = best;
    }
  }
  for (int y = h - 1; y >= 0; --y) {
    for (int x = w - 1; x >= 0; --x) {
      std::int32_t best = d(x, y);
      if (best == 0) continue;
      if (x + 1 < w) best = std::min(best, d(x + 1, y) + 1);
      if (y + 1 < h) {
        best = std::min(best, d(x, y + 1) + 1);
        if (x + 1 < w) best = std::min(best, d(x + 1, y + 1) + 1);
        if (x > 0) best = std::min(best, d(x - 1, y + 1) + 1);
      }
      d(x, y) = best;
    }
  }
  return d;
}

BinaryMask dilate(const BinaryMask& mask, int radius) {
  const auto d = chebyshev_distance(mask);
  BinaryMask out(mask.width(), mask.height(), 0);
  for (std::size_t i = 0; i < out.area(); ++i) out.values()[i] = d.values()[i] <= radius ? 1 : 0;
  return out;
}

PlaneF euclidean_distance(const BinaryMask& mask, std::uint8_t target) {
  constexpr float kInf = std::numeric_limits<float>::infinity();
  const int w = mask.width(), h = mask.height();
  PlaneF sq(w, h, kInf);
  for (std::size_t i = 0; i < sq.area(); ++i) {
    if ((mask.values()[i] != 0) == (target != 0)) sq.values()[i] = 0.0f;
  }
  const int n = std::max(w, h);
  std::vector<float> f(n), d(n), z(n + 1);
  std::vector<int> v(n);
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) f[y] = sq(x, y);
    squared_edt_1d(f.data(), d.data(), h, v, z);
    for (int y = 0; y < h; ++y) sq(x, y) = d[y];
  }
  for (int y = 0; y < h; ++y) {
    float* row = sq.row(y);
    std::copy(row, row + w, f.begin());
    squared_edt_1d(f.data(), d.data(), w, v, z);
    for (int x = 0; x < w; ++x) row[x] = std::sqrt(d[x]);
  }
  return sq;
}

ContourRingSet contour_rings(const BinaryMask& mask, const RingSpec& spec) {
  for (int width : spec.widths) {
    if (width <= 0) throw Error(ErrorKind::InvalidArgument, "ring widths must be positive");
  }
  const auto& w = spec.weights;
  if (!(w[0] > w[1] && w[1] > w[2] && w[2] > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "ring weights must be strictly decreasing and positive");
  }
  if (count_foreground(mask) == 0) throw Error(ErrorKind::EmptyMask, "rings of an empty mask");

  const auto d = chebyshev_distance(mask);
  ContourRingSet set;
  set.widths = spec.widths;
  set.weights = spec.weights;
  int inner = 0;
  for (int i = 0; i < 3; ++i) {
    const int outer = inner + spec.widths[i];
    BinaryMask ring(mask.width(), mask.height(), 0);
    for (std::size_t k = 0; k < ring.area(); ++k) {
      const std::int32_t dist = d.values()[k];
      ring.values()[k] = (dist > inner && dist <= outer) ? 1 : 0;
    }
    set.rings[i] = std::move(ring);
    inner = outer;
  }
  return set;
}

double feather_value(double signed_distance, double feather_radius) {
  if (feather_radius <= 0.0) {
    if (signed_distance > 0.0) return 1.0;
    return signed_distance < 0.0 ? 0.0 : 0.5;
  }
  return std::clamp(0.5 + signed_distance / (2.0 * feather_radius), 0.0, 1.0);
}

PlaneF feather_alpha(const BinaryMask& mask, double feather_radius) {
  if (feather_radius < 0.0) throw Error(ErrorKind::InvalidArgument, "negative feather radius");
  if (count_foreground(mask) == 0) throw Error(ErrorKind::EmptyMask, "feathering an empty mask");
  PlaneF alpha(mask.width(), mask.height(), 0.0f);
  if (feather_radius == 0.0) {
    for (std::size_t i = 0; i < alpha.area(); ++i) alpha.values()[i] = mask.values()[i] ? 1.0f : 0.0f;
    return alpha;
  }
  const PlaneF to_background = euclidean_distance(mask, 0);
  const PlaneF to_foreground = euclidean_distance(mask, 1);
  for (std::size_t i = 0; i < alpha.area(); ++i) {
    const double sd = mask.values()[i] ? static_cast<double>(to_background.values()[i]) - 0.5
                                       : 0.5 - static_cast<double>(to_foreground.values()[i]);
    alpha.values()[i] = static_cast<float>(feather_value(sd, feather_radius));
  }
  return alpha;
}

CutResult cut_instance(const Image& image, const InstanceAnnotation& annotation,
                       double feather_radius) {
  CutResult out;
  out.mask = rasterize(annotation, image.width(), image.height());
  const PlaneF alpha = feather_alpha(out.mask, feather_radius);

  out.hole = BinaryMask(image.width(), image.height(), 0);
  for (std::size_t i = 0; i < alpha.area(); ++i) out.hole.values()[i] = alpha.values()[i] > 0.0f;
  const BBox box = mask_to_bbox(out.hole);
  const int x0 = static_cast<int>(box.x), y0 = static_cast<int>(box.y);
  const int w = static_cast<int>(box.w), h = static_cast<int>(box.h);

  AlphaInstancePatch& patch = out.patch;
  patch.origin = {x0, y0};
  patch.center = mask_centroid(out.mask);
  patch.source_annotation_id = annotation.id;
  patch.red = PlaneF(w, h);
  patch.green = PlaneF(w, h);
  patch.blue = PlaneF(w, h);
  patch.alpha = PlaneF(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::uint8_t* px = image.at(x0 + x, y0 + y);
      patch.red(x, y) = px[0];
      patch.green(x, y) = px[1];
      patch.blue(x, y) = px[2];
      patch.alpha(x, y) = alpha(x0 + x, y0 + y);
    }
  }
  return out;
}

void estimate_foreground(AlphaInstancePatch& patch, const Image& source, const Image& background) {
  if (source.size() != background.size()) {
    throw Error(ErrorKind::InvalidArgument, "source and background sizes differ");
  }
  for (int y = 0; y < patch.height(); ++y) {
    for (int x = 0; x < patch.width(); ++x) {
      const float a = patch.alpha(x, y);
      const int sx = patch.origin.x + x, sy = patch.origin.y + y;
      if (a <= 0.0f || sx >= source.width() || sy >= source.height()) continue;
      const std::uint8_t* i = source.at(sx, sy);
      const std::uint8_t* b = background.at(sx, sy);
      const float keep = 1.0f - a;
      patch.red(x, y) = (static_cast<float>(i[0]) - keep * static_cast<float>(b[0])) / a;
      patch.green(x, y) = (static_cast<float>(i[1]) - keep * static_cast<float>(b[1])) / a;
      patch.blue(x, y) = (static_cast<float>(i[2]) - keep * static_cast<float>(b[2])) / a;
    }
  }
}

}  // namespace instaboost
