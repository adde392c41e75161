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
#include "instaboost/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "instaboost/image_io.hpp"
#include "instaboost/maskops.hpp"

namespace instaboost::synth {
namespace {

std::uint8_t to_byte(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

// Lattice noise with smoothstep interpolation.
class ValueNoise {
 public:
  ValueNoise(int cells_x, int cells_y, Rng& rng) : cx_(cells_x + 2), cy_(cells_y + 2) {
    lattice_.resize(static_cast<std::size_t>(cx_) * cy_);
    for (auto& v : lattice_) v = uniform01(rng) * 2.0 - 1.0;
  }

  // u, v in lattice units.
  double at(double u, double v) const {
    const int i = static_cast<int>(u);
    const int j = static_cast<int>(v);
    const double fu = smooth(u - i);
    const double fv = smooth(v - j);
    const double a = node(i, j) * (1 - fu) + node(i + 1, j) * fu;
    const double b = node(i, j + 1) * (1 - fu) + node(i + 1, j + 1) * fu;
    return a * (1 - fv) + b * fv;
  }

 private:
  static double smooth(double t) { return t * t * (3 - 2 * t); }
  double node(int i, int j) const {
    i = std::clamp(i, 0, cx_ - 1);
    j = std::clamp(j, 0, cy_ - 1);
    return lattice_[static_cast<std::size_t>(j) * cx_ + i];
  }

  int cx_;
  int cy_;
  std::vector<double> lattice_;
};

}  // namespace

Image natural_scene(int width, int height, std::uint64_t seed) {
  Rng rng(mix_seed(seed));
  double base[3], gx[3], gy[3];
  for (int c = 0; c < 3; ++c) {
    base[c] = uniform(rng, 60, 190);
    gx[c] = uniform(rng, -60, 60);
    gy[c] = uniform(rng, -60, 60);
  }
  struct Octave {
    double scale;
    double amplitude;
    ValueNoise noise[3];
  };
  std::vector<Octave> octaves;
  for (double cells : {4.0, 12.0, 40.0}) {
    const int nx = static_cast<int>(cells);
    const int ny = std::max(1, static_cast<int>(cells * height / std::max(1, width)));
    octaves.push_back({cells / width, 40.0 / std::sqrt(cells),
                       {ValueNoise(nx, ny, rng), ValueNoise(nx, ny, rng), ValueNoise(nx, ny, rng)}});
  }
  struct Blob {
    double x, y, radius;
    double color[3];
  };
  std::vector<Blob> blobs(6);
  for (auto& b : blobs) {
    b.x = uniform(rng, 0, width);
    b.y = uniform(rng, 0, height);
    b.radius = uniform(rng, 0.05, 0.2) * std::min(width, height);
    for (double& c : b.color) c = uniform(rng, -50, 50);
  }

  Image img(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double u = static_cast<double>(x) / width;
      const double v = static_cast<double>(y) / height;
      std::uint8_t* px = img.at(x, y);
      for (int c = 0; c < 3; ++c) {
        double val = base[c] + gx[c] * (u - 0.5) + gy[c] * (v - 0.5);
        for (const auto& o : octaves) val += o.amplitude * o.noise[c].at(x * o.scale, y * o.scale);
        for (const auto& b : blobs) {
          const double d2 = ((x - b.x) * (x - b.x) + (y - b.y) * (y - b.y)) / (b.radius * b.radius);
          val += b.color[c] * std::exp(-d2);
        }
        val += uniform(rng, -3, 3);
        px[c] = to_byte(val);
      }
    }
  }
  return img;
}

Image striped_scene(int width, int height, double period, bool vertical, std::uint64_t seed) {
  Rng rng(mix_seed(seed));
  Image img(width, height);
  const double k = 2.0 * std::numbers::pi / period;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double phase = k * (vertical ? x : y);
      const double s = std::sin(phase);
      std::uint8_t* px = img.at(x, y);
      px[0] = to_byte(128 + 90 * s + uniform(rng, -4, 4));
      px[1] = to_byte(128 - 70 * s + uniform(rng, -4, 4));
      px[2] = to_byte(100 + 50 * std::cos(phase) + uniform(rng, -4, 4));
    }
  }
  return img;
}

Image constant_image(int width, int height, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  Image img(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      std::uint8_t* px = img.at(x, y);
      px[0] = r;
      px[1] = g;
      px[2] = b;
    }
  }
  return img;
}

Image gradient_image(int width, int height, double a, double b) {
  Image img(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const std::uint8_t v = to_byte(a + b * x);
      std::uint8_t* px = img.at(x, y);
      px[0] = px[1] = px[2] = v;
    }
  }
  return img;
}

Polygon ellipse_polygon(double cx, double cy, double rx, double ry, int vertices) {
  Polygon poly;
  poly.reserve(static_cast<std::size_t>(vertices) * 2);
  for (int i = 0; i < vertices; ++i) {
    const double t = 2.0 * std::numbers::pi * i / vertices;
    poly.push_back(cx + rx * std::cos(t));
    poly.push_back(cy + ry * std::sin(t));
  }
  return poly;
}

InstanceAnnotation ellipse_instance(std::int64_t id, std::int64_t image_id,
                                    std::int64_t category_id, double cx, double cy, double rx,
                                    double ry) {
  InstanceAnnotation ann;
  ann.id = id;
  ann.image_id = image_id;
  ann.category_id = category_id;
  ann.segmentation.polygons.push_back(ellipse_polygon(cx, cy, rx, ry));
  ann.bbox = {cx - rx, cy - ry, 2 * rx, 2 * ry};
  ann.area = std::numbers::pi * rx * ry;
  return ann;
}

void paint_instance(Image& image, const InstanceAnnotation& ann, std::uint64_t seed) {
  Rng rng(mix_seed(seed ^ 0x5eedULL));
  const BinaryMask mask = rasterize(ann, image.width(), image.height());
  double color[3];
  for (double& c : color) c = uniform(rng, 20, 235);
  const double fx = uniform(rng, 0.15, 0.4);
  const double fy = uniform(rng, 0.15, 0.4);
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      if (!mask(x, y)) continue;
      const double tex = 18.0 * std::sin(fx * x) * std::cos(fy * y);
      std::uint8_t* px = image.at(x, y);
      for (int c = 0; c < 3; ++c) px[c] = to_byte(color[c] + tex + uniform(rng, -5, 5));
    }
  }
}

Scene make_scene(const SceneSpec& spec, std::int64_t image_id, std::int64_t first_annotation_id) {
  Scene scene;
  const std::uint64_t seed = mix_seed(spec.seed ^ static_cast<std::uint64_t>(image_id));
  scene.image = natural_scene(spec.width, spec.height, seed);
  Rng rng(seed);
  BinaryMask taken(spec.width, spec.height, 0);
  const double short_side = std::min(spec.width, spec.height);
  for (int k = 0, attempts = 0; k < spec.instances && attempts < 200; ++attempts) {
    const double rx = uniform(rng, 0.08, 0.18) * short_side;
    const double ry = uniform(rng, 0.08, 0.18) * short_side;
    const double margin = 2.0;
    const double cx = uniform(rng, rx + margin, spec.width - rx - margin);
    const double cy = uniform(rng, ry + margin, spec.height - ry - margin);
    InstanceAnnotation ann = ellipse_instance(first_annotation_id + k, image_id, 1 + k % 3, cx, cy,
                                              rx, ry);
    const BinaryMask m = rasterize(ann, spec.width, spec.height);
    // Keep a gap of a few pixels between instances.
    const BinaryMask grown = dilate(m, 4);
    bool overlaps = false;
    for (std::size_t i = 0; i < grown.values().size() && !overlaps; ++i) {
      overlaps = grown.values()[i] && taken.values()[i];
    }
    if (overlaps) continue;
    for (std::size_t i = 0; i < m.values().size(); ++i) taken.values()[i] |= m.values()[i];
    ann.area = static_cast<double>(count_foreground(m));
    ann.bbox = mask_to_bbox(m);
    paint_instance(scene.image, ann, seed + static_cast<std::uint64_t>(k));
    scene.annotations.push_back(std::move(ann));
    ++k;
  }
  return scene;
}

std::filesystem::path write_dataset(const std::filesystem::path& dir, int count,
                                    const SceneSpec& spec) {
  std::filesystem::create_directories(dir / "images");
  std::vector<ImageRecord> images;
  std::vector<InstanceAnnotation> anns;
  std::int64_t next_ann = 1;
  for (int i = 0; i < count; ++i) {
    const std::int64_t image_id = i + 1;
    Scene scene = make_scene(spec, image_id, next_ann);
    ImageRecord rec;
    rec.id = image_id;
    rec.file_name = "scene_" + std::to_string(image_id) + ".png";
    rec.width = spec.width;
    rec.height = spec.height;
    write_png(scene.image, dir / "images" / rec.file_name);
    images.push_back(rec);
    next_ann += static_cast<std::int64_t>(scene.annotations.size());
    for (auto& a : scene.annotations) anns.push_back(std::move(a));
  }
  std::vector<Category> cats = {{1, "disc", Json::object()},
                                {2, "oval", Json::object()},
                                {3, "blob", Json::object()}};
  const auto path = dir / "annotations.json";
  serialize_dataset(DatasetIndex(std::move(images), std::move(anns), std::move(cats)), path);
  return path;
}

}  // namespace instaboost::synth
