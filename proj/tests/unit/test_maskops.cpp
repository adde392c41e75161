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
#include <gtest/gtest.h>

#include <cmath>

#include "instaboost/maskops.hpp"
#include "instaboost/synthetic.hpp"
#include "oracles.hpp"

namespace ib = instaboost;

namespace {

ib::BinaryMask random_blob_mask(ib::Rng& rng, int w, int h) {
  const double cx = ib::uniform(rng, 0.3 * w, 0.7 * w), cy = ib::uniform(rng, 0.3 * h, 0.7 * h);
  const double rx = ib::uniform(rng, 2, 0.25 * w), ry = ib::uniform(rng, 2, 0.25 * h);
  ib::Polygon poly;
  const int n = 5 + static_cast<int>(ib::uniform01(rng) * 10);
  for (int i = 0; i < n; ++i) {
    const double t = 2 * M_PI * i / n;
    const double wobble = ib::uniform(rng, 0.6, 1.0);
    poly.push_back(cx + wobble * rx * std::cos(t));
    poly.push_back(cy + wobble * ry * std::sin(t));
  }
  return ib::rasterize_polygons({poly}, w, h);
}

TEST(Rasterize, AxisAlignedSquareCoversExactPixels) {
  // [2, 6) x [1, 4) in pixel-edge coordinates: 4 columns, 3 rows.
  const ib::BinaryMask m = ib::rasterize_polygons({{2, 1, 6, 1, 6, 4, 2, 4}}, 10, 8);
  EXPECT_EQ(ib::count_foreground(m), 12u);
  EXPECT_TRUE(m(2, 1));
  EXPECT_TRUE(m(5, 3));
  EXPECT_FALSE(m(6, 3));
  EXPECT_FALSE(m(2, 4));
  const ib::BBox box = ib::mask_to_bbox(m);
  EXPECT_EQ(box, (ib::BBox{2, 1, 4, 3}));
}

TEST(Rasterize, MatchesCrossingCountOracle) {
  ib::Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<ib::Polygon> polys;
    const int count = 1 + static_cast<int>(ib::uniform01(rng) * 3);
    for (int k = 0; k < count; ++k) {
      ib::Polygon p;
      const int n = 3 + static_cast<int>(ib::uniform01(rng) * 8);
      for (int i = 0; i < n; ++i) {
        p.push_back(ib::uniform(rng, -3, 33));
        p.push_back(ib::uniform(rng, -3, 27));
      }
      polys.push_back(p);
    }
    const ib::BinaryMask got = ib::rasterize_polygons(polys, 30, 24);
    const ib::BinaryMask want = oracle::fill_polygons(polys, 30, 24);
    EXPECT_EQ(got, want) << "trial " << trial;
  }
}

TEST(Rasterize, DegeneratePolygonsThrow) {
  EXPECT_THROW(ib::rasterize_polygons({{1, 1, 5, 5}}, 10, 10), ib::Error);
  try {
    ib::rasterize_polygons({{1, 1, 5, 5, 9, 9}}, 10, 10);  // collinear
    FAIL();
  } catch (const ib::Error& e) {
    EXPECT_EQ(e.kind(), ib::ErrorKind::DegenerateGeometry);
  }
}

TEST(Rasterize, RleAnnotationDecodesDirectly) {
  ib::BinaryMask m(7, 5, 0);
  m(3, 2) = m(4, 2) = m(4, 3) = 1;
  ib::InstanceAnnotation ann;
  ann.segmentation.rle = ib::rle_encode(m);
  EXPECT_EQ(ib::rasterize(ann, 7, 5), m);
}

TEST(MaskMeasures, CentroidIsMeanPixelIndex) {
  ib::BinaryMask m(5, 5, 0);
  m(1, 1) = m(3, 1) = m(1, 4) = 1;
  const ib::Point2d c = ib::mask_centroid(m);
  EXPECT_DOUBLE_EQ(c.x, 5.0 / 3.0);
  EXPECT_DOUBLE_EQ(c.y, 2.0);
  EXPECT_THROW(ib::mask_to_bbox(ib::BinaryMask(3, 3, 0)), ib::Error);
}

TEST(Distance, ChebyshevMatchesExhaustiveSearch) {
  ib::Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const ib::BinaryMask m = random_blob_mask(rng, 37, 29);
    if (ib::count_foreground(m) == 0) continue;
    const auto got = ib::chebyshev_distance(m);
    const auto want = oracle::chessboard_distance(m);
    for (int y = 0; y < m.height(); ++y) {
      for (int x = 0; x < m.width(); ++x) ASSERT_EQ(got(x, y), want(x, y)) << x << "," << y;
    }
  }
}

TEST(Distance, EuclideanMatchesExhaustiveSearch) {
  ib::Rng rng(8);
  const ib::BinaryMask m = random_blob_mask(rng, 31, 23);
  const ib::PlaneF got = ib::euclidean_distance(m, 1);
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) {
      double best = 1e30;
      for (int v = 0; v < m.height(); ++v) {
        for (int u = 0; u < m.width(); ++u) {
          if (m(u, v)) best = std::min(best, std::hypot(double(u - x), double(v - y)));
        }
      }
      ASSERT_NEAR(got(x, y), best, 1e-4) << x << "," << y;
    }
  }
}

TEST(Rings, BandsMatchExhaustiveChessboardBanding) {
  ib::Rng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const ib::BinaryMask m = random_blob_mask(rng, 48, 36);
    if (ib::count_foreground(m) == 0) continue;
    const ib::RingSpec spec{{1 + trial % 3, 2, 4}, {0.5, 0.3, 0.2}};
    const ib::ContourRingSet rings = ib::contour_rings(m, spec);
    const auto want = oracle::bands(m, spec.widths);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(rings.rings[i], want[i]) << "ring " << i;
  }
}

TEST(Rings, AreDisjointAndOutsideTheMask) {
  const ib::BinaryMask m = ib::rasterize_polygons({ib::synth::ellipse_polygon(30, 25, 12, 9)}, 60, 50);
  const ib::ContourRingSet rings = ib::contour_rings(m);
  for (std::size_t k = 0; k < m.area(); ++k) {
    int hits = m.values()[k];
    for (const auto& r : rings.rings) hits += r.values()[k];
    ASSERT_LE(hits, 1);
  }
  // The first ring is the radius-5 square dilation minus the mask.
  ib::BinaryMask grown = ib::dilate(m, 5);
  for (std::size_t k = 0; k < m.area(); ++k) {
    EXPECT_EQ(rings.rings[0].values()[k], grown.values()[k] && !m.values()[k]);
  }
}

TEST(Rings, RejectBadSpecs) {
  ib::BinaryMask m(10, 10, 0);
  m(5, 5) = 1;
  EXPECT_THROW(ib::contour_rings(m, {{0, 5, 5}, {0.4, 0.35, 0.25}}), ib::Error);
  EXPECT_THROW(ib::contour_rings(m, {{5, 5, 5}, {0.3, 0.35, 0.25}}), ib::Error);
  EXPECT_THROW(ib::contour_rings(ib::BinaryMask(10, 10, 0)), ib::Error);
}

TEST(Feather, ZeroRadiusIsTheHardMask) {
  ib::Rng rng(2);
  const ib::BinaryMask m = random_blob_mask(rng, 30, 30);
  const ib::PlaneF a = ib::feather_alpha(m, 0.0);
  for (std::size_t k = 0; k < m.area(); ++k) EXPECT_EQ(a.values()[k], float(m.values()[k]));
}

TEST(Feather, ProfileIsMonotoneAndSymmetricAcrossTheEdge) {
  // Half-plane mask: columns x >= 20 are foreground.
  ib::BinaryMask m(40, 5, 0);
  for (int y = 0; y < 5; ++y) {
    for (int x = 20; x < 40; ++x) m(x, y) = 1;
  }
  const double r = 3.0;
  const ib::PlaneF a = ib::feather_alpha(m, r);
  for (int x = 0; x < 40; ++x) {
    // Signed distance to the edge at x = 20 measured from pixel centers.
    const double sd = x + 0.5 - 20.0;
    EXPECT_NEAR(a(x, 2), std::clamp(0.5 + sd / (2 * r), 0.0, 1.0), 1e-6) << x;
    if (x > 0) { EXPECT_GE(a(x, 2), a(x - 1, 2)); }
  }
  EXPECT_NEAR(a(19, 2) + a(20, 2), 1.0, 1e-6);
}

TEST(Cut, PatchHoldsSourcePixelsAndAlpha) {
  ib::Image img = ib::synth::natural_scene(64, 48, 4);
  const ib::InstanceAnnotation ann = ib::synth::ellipse_instance(1, 1, 1, 30, 24, 10, 7);
  const ib::CutResult cut = ib::cut_instance(img, ann, 2.0);
  EXPECT_EQ(cut.mask, ib::rasterize(ann, 64, 48));
  // The hole covers the mask and the outer half of the feather.
  for (std::size_t k = 0; k < cut.mask.area(); ++k) {
    if (cut.mask.values()[k]) { ASSERT_TRUE(cut.hole.values()[k]); }
  }
  EXPECT_EQ(ib::mask_to_bbox(cut.hole),
            (ib::BBox{double(cut.patch.origin.x), double(cut.patch.origin.y),
                      double(cut.patch.width()), double(cut.patch.height())}));
  const ib::Point2d c = ib::mask_centroid(cut.mask);
  EXPECT_EQ(cut.patch.center.x, c.x);
  EXPECT_EQ(cut.patch.center.y, c.y);
  for (int y = 0; y < cut.patch.height(); ++y) {
    for (int x = 0; x < cut.patch.width(); ++x) {
      const std::uint8_t* px = img.at(cut.patch.origin.x + x, cut.patch.origin.y + y);
      ASSERT_EQ(cut.patch.red(x, y), px[0]);
      ASSERT_EQ(cut.patch.blue(x, y), px[2]);
    }
  }
}

TEST(Cut, ForegroundEstimateRecomposesTheSource) {
  ib::Image img = ib::synth::natural_scene(64, 48, 9);
  ib::Image bg = ib::synth::constant_image(64, 48, 90, 140, 30);
  const ib::InstanceAnnotation ann = ib::synth::ellipse_instance(1, 1, 1, 30, 24, 12, 9);
  ib::CutResult cut = ib::cut_instance(img, ann, 3.0);
  ib::estimate_foreground(cut.patch, img, bg);
  for (int y = 0; y < cut.patch.height(); ++y) {
    for (int x = 0; x < cut.patch.width(); ++x) {
      const float a = cut.patch.alpha(x, y);
      if (a <= 0) continue;
      const std::uint8_t* src = img.at(cut.patch.origin.x + x, cut.patch.origin.y + y);
      const std::uint8_t* b = bg.at(cut.patch.origin.x + x, cut.patch.origin.y + y);
      const double back = a * cut.patch.green(x, y) + (1 - a) * b[1];
      ASSERT_NEAR(back, src[1], 1e-3);
    }
  }
}

}  // namespace
