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

// Slow, obviously-correct reference computations used to check the library.
// Nothing here calls into the code under test except for plain data types.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>
#include <vector>

#include "instaboost/core.hpp"

namespace oracle {

using instaboost::BinaryMask;
using instaboost::Image;
using instaboost::Point2i;

/// Even-odd crossing count for a point against one closed polygon given as
/// flat x,y pairs.
inline bool inside_polygon(const std::vector<double>& poly, double px, double py) {
  bool inside = false;
  const std::size_t n = poly.size() / 2;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const double xi = poly[2 * i], yi = poly[2 * i + 1];
    const double xj = poly[2 * j], yj = poly[2 * j + 1];
    if ((yi > py) != (yj > py)) {
      const double x_cross = xj + (py - yj) * (xi - xj) / (yi - yj);
      if (px < x_cross) inside = !inside;
    }
  }
  return inside;
}

/// Pixel (x, y) is set when its center lies inside any of the polygons.
inline BinaryMask fill_polygons(const std::vector<std::vector<double>>& polys, int w, int h) {
  BinaryMask m(w, h, 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (const auto& p : polys) {
        if (inside_polygon(p, x + 0.5, y + 0.5)) {
          m(x, y) = 1;
          break;
        }
      }
    }
  }
  return m;
}

/// Chessboard distance to the nearest foreground pixel by exhaustive search
/// over foreground pixels; INT_MAX when the mask is empty.
inline instaboost::Grid<int> chessboard_distance(const BinaryMask& mask) {
  std::vector<Point2i> fg;
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (mask(x, y)) fg.push_back({x, y});
    }
  }
  instaboost::Grid<int> d(mask.width(), mask.height(), std::numeric_limits<int>::max());
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      int best = std::numeric_limits<int>::max();
      for (const auto& p : fg) best = std::min(best, std::max(std::abs(p.x - x), std::abs(p.y - y)));
      d(x, y) = best;
    }
  }
  return d;
}

/// Background bands at chessboard distance (W_{i-1}, W_i] from the mask.
inline std::array<BinaryMask, 3> bands(const BinaryMask& mask, const std::array<int, 3>& widths) {
  const auto d = chessboard_distance(mask);
  std::array<BinaryMask, 3> out;
  int lo = 0;
  for (int i = 0; i < 3; ++i) {
    const int hi = lo + widths[i];
    out[i] = BinaryMask(mask.width(), mask.height(), 0);
    for (int y = 0; y < mask.height(); ++y) {
      for (int x = 0; x < mask.width(); ++x) {
        if (d(x, y) > lo && d(x, y) <= hi) out[i](x, y) = 1;
      }
    }
    lo = hi;
  }
  return out;
}

/// Straight from the definition: for each band, average the Euclidean RGB
/// distance between every band pixel and the pixel displaced by
/// (candidate - origin), skipping displaced pixels off the image or inside
/// `hole`; a band with fewer than half its pixels compared makes the whole
/// distance infinite. Bands are weighted and summed in double precision.
inline double appearance_distance(const Image& img, const std::array<BinaryMask, 3>& rings,
                                  const std::array<double, 3>& weights, const BinaryMask& hole,
                                  Point2i origin, Point2i candidate) {
  const int dx = candidate.x - origin.x, dy = candidate.y - origin.y;
  double total = 0.0;
  bool any = false;
  for (int i = 0; i < 3; ++i) {
    double sum = 0.0;
    long used = 0, size = 0;
    for (int y = 0; y < img.height(); ++y) {
      for (int x = 0; x < img.width(); ++x) {
        if (!rings[i](x, y)) continue;
        ++size;
        const int qx = x + dx, qy = y + dy;
        if (qx < 0 || qy < 0 || qx >= img.width() || qy >= img.height() || hole(qx, qy)) continue;
        double s = 0.0;
        for (int c = 0; c < 3; ++c) {
          const double diff = double(img.at(x, y)[c]) - double(img.at(qx, qy)[c]);
          s += diff * diff;
        }
        sum += std::sqrt(s);
        ++used;
      }
    }
    if (size == 0) continue;
    any = true;
    if (2 * used < size) return std::numeric_limits<double>::infinity();
    total += weights[i] * sum / double(used);
  }
  return any ? total : std::numeric_limits<double>::infinity();
}

/// PSNR over the pixels selected by `region` (all channels).
inline double psnr(const Image& a, const Image& b, const BinaryMask& region) {
  double se = 0.0;
  long n = 0;
  for (int y = 0; y < a.height(); ++y) {
    for (int x = 0; x < a.width(); ++x) {
      if (!region(x, y)) continue;
      for (int c = 0; c < 3; ++c) {
        const double d = double(a.at(x, y)[c]) - double(b.at(x, y)[c]);
        se += d * d;
        ++n;
      }
    }
  }
  if (n == 0) return 0.0;
  if (se == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / (se / double(n)));
}

inline double iou(const BinaryMask& a, const BinaryMask& b) {
  long inter = 0, uni = 0;
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    inter += a.values()[i] && b.values()[i];
    uni += a.values()[i] || b.values()[i];
  }
  return uni == 0 ? 1.0 : double(inter) / double(uni);
}

/// Pearson statistic sum (O - E)^2 / E.
inline double chi_square(const std::vector<long>& observed, const std::vector<double>& p) {
  long n = 0;
  for (long o : observed) n += o;
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = p[i] * double(n);
    stat += (double(observed[i]) - e) * (double(observed[i]) - e) / e;
  }
  return stat;
}

/// Two-sided Kolmogorov-Smirnov statistic of samples against U(lo, hi).
inline double ks_uniform(std::vector<double> xs, double lo, double hi) {
  std::sort(xs.begin(), xs.end());
  const double n = double(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = std::clamp((xs[i] - lo) / (hi - lo), 0.0, 1.0);
    d = std::max({d, f - double(i) / n, double(i + 1) / n - f});
  }
  return d;
}

inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = double(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Every regular file under `root` with its bytes, keyed by relative path.
inline std::vector<std::pair<std::string, std::string>> tree_contents(
    const std::filesystem::path& root) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) {
      out.emplace_back(std::filesystem::relative(e.path(), root).string(), read_file(e.path()));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Fresh empty scratch directory.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("instaboost_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace oracle
