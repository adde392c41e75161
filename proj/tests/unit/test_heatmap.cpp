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

#include "instaboost/heatmap.hpp"
#include "instaboost/synthetic.hpp"
#include "oracles.hpp"

namespace ib = instaboost;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(HeatmapConfig, DefaultsMatchTheMethod) {
  const ib::HeatmapConfig cfg;
  EXPECT_EQ(cfg.ring_widths, (std::array<int, 3>{5, 5, 5}));
  EXPECT_EQ(cfg.ring_weights, (std::array<double, 3>{0.4, 0.35, 0.25}));
  EXPECT_EQ(cfg.working_size, (ib::Size2i{180, 120}));
  EXPECT_EQ(cfg.epsilon_log, 1e-6);
  EXPECT_NO_THROW(ib::check(cfg));
}

TEST(HeatmapConfig, RejectsBadValues) {
  ib::HeatmapConfig cfg;
  cfg.working_size = {0, 10};
  EXPECT_THROW(ib::check(cfg), ib::Error);
  cfg = {};
  cfg.epsilon_log = 0.0;
  EXPECT_THROW(ib::check(cfg), ib::Error);
  cfg = {};
  cfg.ring_weights = {0.2, 0.3, 0.5};
  EXPECT_THROW(ib::check(cfg), ib::Error);
}

TEST(LogRescale, AnchorValues) {
  ib::PlaneD d(4, 1);
  const double m = 2.0, big = 10.0;
  d(0, 0) = big;
  d(1, 0) = m + (big - m) / std::exp(1.0);
  d(2, 0) = m;
  d(3, 0) = kInf;
  const ib::PlaneD h = ib::log_rescale(d, 1e-6);
  EXPECT_NEAR(h(0, 0), 0.0, 1e-12);
  EXPECT_NEAR(h(1, 0), 1.0, 1e-9);
  EXPECT_NEAR(h(2, 0), -std::log(1e-6), 1e-9);
  EXPECT_EQ(h(3, 0), 0.0);
}

TEST(LogRescale, EqualDistancesGiveAUniformGrid) {
  ib::PlaneD d(3, 2, 4.5);
  d(1, 1) = kInf;
  const ib::PlaneD h = ib::log_rescale(d, 1e-6);
  EXPECT_EQ(h(0, 0), 1.0);
  EXPECT_EQ(h(2, 1), 1.0);
  EXPECT_EQ(h(1, 1), 0.0);
}

TEST(Resize, AreaAveragesBlocks) {
  ib::PlaneF p(4, 2);
  for (int x = 0; x < 4; ++x) {
    p(x, 0) = float(x);
    p(x, 1) = float(10 + x);
  }
  const ib::PlaneF r = ib::resize_area(p, {2, 1});
  EXPECT_FLOAT_EQ(r(0, 0), (0 + 1 + 10 + 11) / 4.0f);
  EXPECT_FLOAT_EQ(r(1, 0), (2 + 3 + 12 + 13) / 4.0f);
  EXPECT_EQ(ib::resize_area(p, {4, 2}), p);
}

TEST(Resize, AreaHandlesFractionalFootprints) {
  ib::PlaneF p(3, 1);
  p(0, 0) = 0;
  p(1, 0) = 3;
  p(2, 0) = 6;
  const ib::PlaneF r = ib::resize_area(p, {2, 1});
  // Each output cell covers 1.5 source pixels.
  EXPECT_NEAR(r(0, 0), (0 * 1.0 + 3 * 0.5) / 1.5, 1e-5);
  EXPECT_NEAR(r(1, 0), (3 * 0.5 + 6 * 1.0) / 1.5, 1e-5);
}

TEST(Resize, ImageOverloadMatchesThePlanePath) {
  for (const ib::Size2i src : {ib::Size2i{640, 480}, ib::Size2i{257, 131}, ib::Size2i{90, 60}}) {
    const ib::Image img = ib::synth::natural_scene(src.width, src.height, 4);
    const ib::ColorPlanes a = ib::resize_area(img, {180, 120});
    const ib::ColorPlanes b = ib::resize_area(ib::to_planes(img), {180, 120});
    ASSERT_EQ(a.width(), 180);
    for (std::size_t i = 0; i < b.red.area(); ++i) {
      ASSERT_NEAR(a.red.values()[i], b.red.values()[i], 1e-3);
      ASSERT_NEAR(a.green.values()[i], b.green.values()[i], 1e-3);
      ASSERT_NEAR(a.blue.values()[i], b.blue.values()[i], 1e-3);
    }
  }
}

TEST(Resize, MaskMatchesCoverageOfThePlanePath) {
  const ib::BinaryMask m =
      ib::rasterize_polygons({ib::synth::ellipse_polygon(300, 200, 150, 90)}, 640, 480);
  ib::PlaneF cover(640, 480);
  for (std::size_t i = 0; i < m.area(); ++i) cover.values()[i] = m.values()[i];
  const ib::PlaneF small = ib::resize_area(cover, {180, 120});
  const ib::BinaryMask r = ib::resize_mask(m, {180, 120});
  for (std::size_t i = 0; i < r.area(); ++i) {
    const float c = small.values()[i];
    if (std::fabs(c - 0.5f) > 1e-4f) {
      ASSERT_EQ(r.values()[i], c >= 0.5f ? 1 : 0) << i;
    }
  }
}

TEST(Resize, MaskKeepsCellsAtLeastHalfCovered) {
  ib::BinaryMask m(4, 4, 0);
  m(0, 0) = m(1, 0) = 1;              // cell (0,0): 2 of 4
  m(2, 2) = 1;                        // cell (1,1): 1 of 4
  const ib::BinaryMask r = ib::resize_mask(m, {2, 2});
  EXPECT_EQ(r(0, 0), 1);
  EXPECT_EQ(r(1, 1), 0);
}

TEST(Resize, BilinearKeepsConstantsAndAlignsCenters) {
  EXPECT_EQ(ib::resize_bilinear(ib::PlaneD(5, 4, 3.25), {17, 9}), ib::PlaneD(17, 9, 3.25));
  ib::PlaneD ramp(2, 1);
  ramp(0, 0) = 0;
  ramp(1, 0) = 1;
  const ib::PlaneD up = ib::resize_bilinear(ramp, {4, 1});
  // Output centers at 0.125, 0.375, 0.625, 0.875 of the source width.
  EXPECT_NEAR(up(0, 0), 0.0, 1e-12);
  EXPECT_NEAR(up(1, 0), 0.25, 1e-12);
  EXPECT_NEAR(up(2, 0), 0.75, 1e-12);
  EXPECT_NEAR(up(3, 0), 1.0, 1e-12);
}

struct Fixture {
  ib::Image image;
  ib::BinaryMask mask;
  std::array<ib::BinaryMask, 3> bands;
  ib::Point2i origin;
};

Fixture small_fixture(std::uint64_t seed, int w = 60, int h = 45) {
  Fixture f;
  f.image = ib::synth::natural_scene(w, h, seed);
  f.mask = ib::rasterize_polygons({ib::synth::ellipse_polygon(w * 0.45, h * 0.5, 7, 5)}, w, h);
  f.bands = oracle::bands(f.mask, {2, 2, 3});
  const ib::Point2d c = ib::mask_centroid(f.mask);
  f.origin = {int(std::lround(c.x)), int(std::lround(c.y))};
  return f;
}

TEST(AppearanceDistance, MatchesBruteForceOnEveryCandidate) {
  const Fixture f = small_fixture(17);
  const std::array<double, 3> weights{0.5, 0.3, 0.2};
  ib::ContourRingSet rings{f.bands, {2, 2, 3}, weights};
  const ib::AppearanceScanner scanner(ib::to_planes(f.image), rings, f.mask, f.origin);
  const ib::PlaneD grid = scanner.distance_grid();
  int finite = 0;
  for (int y = 0; y < f.image.height(); ++y) {
    for (int x = 0; x < f.image.width(); ++x) {
      const double want =
          oracle::appearance_distance(f.image, f.bands, weights, f.mask, f.origin, {x, y});
      const double got = grid(x, y);
      if (std::isinf(want)) {
        ASSERT_TRUE(std::isinf(got)) << x << "," << y;
        continue;
      }
      ++finite;
      ASSERT_NEAR(got, want, 1e-6 * std::max(1.0, want)) << x << "," << y;
      ASSERT_NEAR(scanner.distance_at({x, y}), want, 1e-6 * std::max(1.0, want));
    }
  }
  EXPECT_GT(finite, 100);
  EXPECT_EQ(grid(f.origin.x, f.origin.y), 0.0);
}

TEST(AppearanceDistance, IsInfiniteWhenMostPartnersLeaveTheImage) {
  const Fixture f = small_fixture(3);
  ib::ContourRingSet rings{f.bands, {2, 2, 3}, {0.5, 0.3, 0.2}};
  const ib::AppearanceScanner scanner(ib::to_planes(f.image), rings, f.mask, f.origin);
  EXPECT_TRUE(std::isinf(scanner.distance_at({0, 0})));
  EXPECT_TRUE(std::isfinite(scanner.distance_at({f.origin.x + 2, f.origin.y})));
}

TEST(AppearanceDistance, StrideCopiesTheAnchoredGrid) {
  const Fixture f = small_fixture(5);
  ib::ContourRingSet rings{f.bands, {2, 2, 3}, {0.5, 0.3, 0.2}};
  const ib::AppearanceScanner scanner(ib::to_planes(f.image), rings, f.mask, f.origin);
  const ib::PlaneD full = scanner.distance_grid(1);
  const ib::PlaneD coarse = scanner.distance_grid(3);
  EXPECT_EQ(coarse(f.origin.x, f.origin.y), 0.0);
  for (int y = f.origin.y % 3; y < full.height(); y += 3) {
    for (int x = f.origin.x % 3; x < full.width(); x += 3) {
      EXPECT_EQ(coarse(x, y), full(x, y));
      if (x + 1 < full.width()) { EXPECT_EQ(coarse(x + 1, y), full(x, y)); }
    }
  }
}

TEST(Heatmap, ExactEqualsAcceleratedAtTheWorkingSize) {
  const ib::synth::Scene scene = ib::synth::make_scene({180, 120, 1, 4}, 1, 1);
  const ib::BinaryMask mask = ib::rasterize(scene.annotations[0], 180, 120);
  const ib::ConsistencyHeatmap a = ib::compute_heatmap(scene.image, mask);
  const ib::ConsistencyHeatmap b = ib::compute_heatmap_exact(scene.image, mask);
  EXPECT_EQ(a.distance, b.distance);
  EXPECT_EQ(a.value, b.value);
  EXPECT_NEAR(ib::pearson(a.value, b.value), 1.0, 1e-12);
}

TEST(Heatmap, ValueGridHasTheSourceSize) {
  const ib::synth::Scene scene = ib::synth::make_scene({400, 300, 1, 4}, 2, 1);
  const ib::BinaryMask mask = ib::rasterize(scene.annotations[0], 400, 300);
  const ib::ConsistencyHeatmap hm = ib::compute_heatmap(scene.image, mask);
  EXPECT_EQ(hm.value.size(), (ib::Size2i{400, 300}));
  EXPECT_EQ(hm.distance.size(), (ib::Size2i{180, 120}));
  EXPECT_EQ(hm.computed_at, (ib::Size2i{180, 120}));
  EXPECT_FALSE(hm.degenerate);
  EXPECT_FALSE(hm.all_infinite);
  // The identity placement is the best one.
  EXPECT_EQ(ib::argmin_distance(hm.distance), hm.origin);
  EXPECT_EQ(ib::argmax_value(hm.working_value), hm.origin);
}

TEST(Heatmap, ConstantImageIsDegenerateAndUniform) {
  const ib::Image img = ib::synth::constant_image(180, 120, 40, 80, 120);
  const ib::BinaryMask mask =
      ib::rasterize_polygons({ib::synth::ellipse_polygon(90, 60, 20, 15)}, 180, 120);
  const ib::ConsistencyHeatmap hm = ib::compute_heatmap(img, mask);
  EXPECT_TRUE(hm.degenerate);
  EXPECT_EQ(hm.min_distance, 0.0);
  EXPECT_EQ(hm.max_distance, 0.0);
  for (int y = 0; y < 120; ++y) {
    for (int x = 0; x < 180; ++x) {
      const double d = hm.distance(x, y);
      ASSERT_EQ(hm.working_value(x, y), std::isfinite(d) ? 1.0 : 0.0);
    }
  }
}

TEST(Heatmap, MaskCoveringNearlyEverythingFallsBackToADelta) {
  const ib::Image img = ib::synth::natural_scene(180, 120, 2);
  ib::BinaryMask mask(180, 120, 1);
  mask(0, 0) = 0;
  const ib::ConsistencyHeatmap hm = ib::compute_heatmap(img, mask);
  EXPECT_TRUE(hm.all_infinite);
  const ib::ProbabilityMap pm = ib::to_probability(hm);
  ib::Rng rng(1);
  const ib::Point2i c = ib::sample_center(rng, pm);
  EXPECT_NEAR(c.x, hm.source_center.x, 0.5);
  EXPECT_NEAR(c.y, hm.source_center.y, 0.5);
}

TEST(Heatmap, EmptyMaskThrows) {
  const ib::Image img = ib::synth::natural_scene(50, 40, 2);
  EXPECT_THROW(ib::compute_heatmap(img, ib::BinaryMask(50, 40, 0)), ib::Error);
}

TEST(Probability, NormalizesAndHonoursExclusion) {
  ib::PlaneD v(2, 2);
  v(0, 0) = 1;
  v(1, 0) = 3;
  v(0, 1) = kInf;
  v(1, 1) = 4;
  ib::BinaryMask ex(2, 2, 0);
  ex(1, 1) = 1;
  const ib::ProbabilityMap pm = ib::to_probability(v, &ex);
  EXPECT_DOUBLE_EQ(pm.p()(0, 0), 0.25);
  EXPECT_DOUBLE_EQ(pm.p()(1, 0), 0.75);
  EXPECT_EQ(pm.p()(0, 1), 0.0);
  EXPECT_EQ(pm.p()(1, 1), 0.0);
  ex = ib::BinaryMask(2, 2, 1);
  try {
    ib::to_probability(v, &ex);
    FAIL();
  } catch (const ib::Error& e) {
    EXPECT_EQ(e.kind(), ib::ErrorKind::DegenerateDistribution);
  }
}

TEST(Probability, SamplerNeverPicksZeroMassCells) {
  ib::PlaneD v(5, 1, 0.0);
  v(1, 0) = 2.0;
  v(3, 0) = 1.0;
  const ib::ProbabilityMap pm = ib::to_probability(v);
  ib::Rng rng(12);
  long hits[5] = {};
  for (int i = 0; i < 30000; ++i) ++hits[ib::sample_center(rng, pm).x];
  EXPECT_EQ(hits[0] + hits[2] + hits[4], 0);
  EXPECT_NEAR(hits[1] / 30000.0, 2.0 / 3.0, 0.02);
}

TEST(Probability, SamplerMatchesTheTableChiSquare) {
  ib::PlaneD v(4, 4);
  for (int k = 0; k < 16; ++k) v.values()[k] = 1.0 + (k * 7) % 5;
  const ib::ProbabilityMap pm = ib::to_probability(v);
  ib::Rng rng(2024);
  std::vector<long> counts(16, 0);
  for (int i = 0; i < 100000; ++i) {
    const ib::Point2i c = ib::sample_center(rng, pm);
    ++counts[static_cast<std::size_t>(c.y * 4 + c.x)];
  }
  // 0.999 quantile of chi-square with 15 degrees of freedom.
  EXPECT_LT(oracle::chi_square(counts, pm.p().values()), 37.697);
}

TEST(Render, NormalizesToByteRange) {
  ib::PlaneD v(3, 1);
  v(0, 0) = -2;
  v(1, 0) = 0;
  v(2, 0) = 2;
  const ib::Image gray = ib::render_heatmap(v, false);
  EXPECT_EQ(gray.at(0, 0)[0], 0);
  EXPECT_EQ(gray.at(2, 0)[0], 255);
  EXPECT_NEAR(gray.at(1, 0)[0], 128, 1);
  const ib::Image color = ib::render_heatmap(v, true);
  EXPECT_GT(color.at(0, 0)[2], color.at(0, 0)[0]);  // low values are blue
  EXPECT_GT(color.at(2, 0)[0], color.at(2, 0)[2]);  // high values are red
  const ib::Image flat = ib::render_heatmap(ib::PlaneD(3, 3, 1.0), false);
  EXPECT_EQ(flat.at(0, 0)[0], flat.at(2, 2)[0]);
}

}  // namespace
