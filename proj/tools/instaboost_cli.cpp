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

// instaboost: batch augmentation, heatmap export, single-image preview and
// a heatmap benchmark.
//
// Exit codes: 0 success, 1 internal error, 2 usage, 3 validation or unknown
// id, 4 I/O.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include "instaboost/config.hpp"
#include "instaboost/heatmap.hpp"
#include "instaboost/image_io.hpp"
#include "instaboost/maskops.hpp"
#include "instaboost/pipeline.hpp"
#include "instaboost/simd/kernels.hpp"
#include "instaboost/synthetic.hpp"

namespace ib = instaboost;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitIo = 4;

int exit_code_for(ib::ErrorKind kind) {
  switch (kind) {
    case ib::ErrorKind::InvalidArgument:
      return kExitUsage;
    case ib::ErrorKind::MalformedDocument:
    case ib::ErrorKind::DanglingReference:
    case ib::ErrorKind::ValidationFailure:
      return kExitValidation;
    case ib::ErrorKind::IoFailure:
      return kExitIo;
    default:
      return kExitInternal;
  }
}

// Thrown for missing required inputs once config file and flags are merged.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int default_workers() {
  if (const char* env = std::getenv("INSTABOOST_WORKERS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring INSTABOOST_WORKERS=" << env << "\n";
  }
  return 1;
}

// Options shared by commands that run the augmentation.
struct AugmentFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
  std::optional<double> apply_probability;
  std::optional<int> max_instances;
  bool forbid_overlap = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file; flags override its values");
    cmd->add_option("--seed", seed, "Random seed");
    cmd->add_option("--mode", mode, "random_jitter or map_guided")
        ->check(CLI::IsMember({"random_jitter", "map_guided"}));
    cmd->add_option("--apply-probability", apply_probability, "Per-image apply probability");
    cmd->add_option("--max-instances", max_instances, "Moved instances per image (default all)");
    cmd->add_flag("--forbid-overlap", forbid_overlap, "Never paste centers onto other instances");
  }
};

// Config file keys that are paths or run options rather than augmentation
// settings.
struct FileSettings {
  ib::AugmentConfig cfg;
  std::optional<std::string> ann, images, out_ann, out_images;
  std::optional<int> workers, copies;
};

FileSettings load_settings(const AugmentFlags& flags) {
  FileSettings s;
  if (!flags.config_path.empty()) {
    std::ifstream in(flags.config_path);
    if (!in) throw ib::Error(ib::ErrorKind::IoFailure, "cannot open config " + flags.config_path);
    ib::Json doc;
    try {
      in >> doc;
    } catch (const ib::Json::exception& e) {
      throw ib::Error(ib::ErrorKind::InvalidArgument,
                      "config " + flags.config_path + " is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) {
      throw ib::Error(ib::ErrorKind::InvalidArgument, "config must be a JSON object");
    }
    auto take_string = [&](const char* key, std::optional<std::string>& dst) {
      if (!doc.contains(key)) return;
      if (!doc[key].is_string()) {
        throw ib::Error(ib::ErrorKind::InvalidArgument,
                        std::string("config key '") + key + "' must be a string");
      }
      dst = doc[key].get<std::string>();
      doc.erase(key);
    };
    auto take_int = [&](const char* key, std::optional<int>& dst) {
      if (!doc.contains(key)) return;
      if (!doc[key].is_number_integer()) {
        throw ib::Error(ib::ErrorKind::InvalidArgument,
                        std::string("config key '") + key + "' must be an integer");
      }
      dst = doc[key].get<int>();
      doc.erase(key);
    };
    take_string("ann", s.ann);
    take_string("images", s.images);
    take_string("out_ann", s.out_ann);
    take_string("out_images", s.out_images);
    take_int("workers", s.workers);
    take_int("copies", s.copies);
    s.cfg = ib::augment_config_from_json(doc);
  }
  if (flags.seed) s.cfg.seed = *flags.seed;
  if (flags.mode) s.cfg.mode = ib::parse_mode(*flags.mode);
  if (flags.apply_probability) s.cfg.apply_probability = *flags.apply_probability;
  if (flags.max_instances) s.cfg.max_instances_per_image = *flags.max_instances;
  if (flags.forbid_overlap) s.cfg.forbid_overlap = true;
  ib::check(s.cfg);
  return s;
}

std::string require(const std::string& flag_value, const std::optional<std::string>& file_value,
                    const char* name) {
  if (!flag_value.empty()) return flag_value;
  if (file_value) return *file_value;
  throw UsageError(std::string("missing required option ") + name);
}

struct ImageTarget {
  ib::DatasetIndex index;
  const ib::ImageRecord* record = nullptr;
  ib::Image image;
};

ImageTarget load_target(const std::string& ann, const std::string& images, std::int64_t image_id) {
  ImageTarget t;
  t.index = ib::parse_dataset(ann);
  t.record = t.index.find_image(image_id);
  if (!t.record) {
    throw ib::Error(ib::ErrorKind::DanglingReference, "unknown image id " + std::to_string(image_id));
  }
  t.image = ib::read_image(fs::path(images) / t.record->file_name);
  return t;
}

ib::Size2i parse_size(const std::string& text) {
  const auto x = text.find('x');
  try {
    if (x == std::string::npos) throw std::invalid_argument("no separator");
    std::size_t used_w = 0, used_h = 0;
    const std::string ws = text.substr(0, x), hs = text.substr(x + 1);
    const int w = std::stoi(ws, &used_w);
    const int h = std::stoi(hs, &used_h);
    if (used_w != ws.size() || used_h != hs.size() || w <= 0 || h <= 0) {
      throw std::invalid_argument("bad number");
    }
    return {w, h};
  } catch (const std::exception&) {
    throw ib::Error(ib::ErrorKind::InvalidArgument, "size must look like 640x480, got " + text);
  }
}

// ---------------------------------------------------------------- augment

struct AugmentCmd {
  AugmentFlags flags;
  std::string ann, images, out_ann, out_images;
  std::optional<int> workers;
  std::optional<int> copies;
  bool json_stats = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--ann", ann, "Input annotation file");
    cmd->add_option("--images", images, "Input image directory");
    cmd->add_option("--out-ann", out_ann, "Output annotation file");
    cmd->add_option("--out-images", out_images, "Output image directory");
    cmd->add_option("--workers", workers, "Worker threads (default INSTABOOST_WORKERS or 1)");
    cmd->add_option("--copies", copies, "Augmented copies per input image");
    cmd->add_flag("--json-stats", json_stats, "Also print run statistics as JSON");
    flags.attach(cmd);
  }

  int run() {
    FileSettings s = load_settings(flags);
    const std::string in_ann = require(ann, s.ann, "--ann");
    const std::string in_images = require(images, s.images, "--images");
    const std::string dst_ann = require(out_ann, s.out_ann, "--out-ann");
    const std::string dst_images = require(out_images, s.out_images, "--out-images");
    ib::DatasetRunOptions options;
    options.workers = workers.value_or(s.workers.value_or(default_workers()));
    options.copies = copies.value_or(s.copies.value_or(1));
    const ib::RunStats stats =
        ib::augment_dataset(in_ann, in_images, dst_ann, dst_images, s.cfg, options);
    std::cout << ib::to_text(stats);
    if (json_stats) std::cout << ib::to_json(stats).dump() << "\n";
    return kExitOk;
  }
};

// ---------------------------------------------------------------- heatmap

struct HeatmapCmd {
  AugmentFlags flags;
  std::string ann, images, out;
  std::int64_t image_id = 0;
  std::int64_t annotation_id = 0;
  bool exact = false;
  bool gray = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--ann", ann, "Annotation file")->required();
    cmd->add_option("--images", images, "Image directory")->required();
    cmd->add_option("--image-id", image_id, "Image id")->required();
    cmd->add_option("--annotation-id", annotation_id, "Instance annotation id")->required();
    cmd->add_option("--out", out, "Output PNG")->required();
    cmd->add_flag("--exact", exact, "Compute at full resolution");
    cmd->add_flag("--gray", gray, "Write grayscale instead of the colormap");
    flags.attach(cmd);
  }

  int run() {
    const FileSettings s = load_settings(flags);
    const ImageTarget t = load_target(ann, images, image_id);
    const ib::InstanceAnnotation* a = t.index.find_annotation(annotation_id);
    if (!a || a->image_id != image_id) {
      throw ib::Error(ib::ErrorKind::DanglingReference,
                      "annotation " + std::to_string(annotation_id) + " not found on image " +
                          std::to_string(image_id));
    }
    const ib::BinaryMask mask = ib::rasterize(*a, t.image.width(), t.image.height());
    const ib::ConsistencyHeatmap hm = exact ? ib::compute_heatmap_exact(t.image, mask, s.cfg.heatmap)
                                            : ib::compute_heatmap(t.image, mask, s.cfg.heatmap);
    ib::write_png(ib::render_heatmap(hm.value, !gray), out);
    const ib::Point2i arg = ib::argmax_value(hm.working_value);
    std::cout << std::setprecision(9) << "m: " << hm.min_distance << "\n"
              << "M: " << hm.max_distance << "\n"
              << "argmax: " << arg.x << " " << arg.y << " (working " << hm.computed_at.width
              << "x" << hm.computed_at.height << ")\n"
              << "center: " << hm.origin.x << " " << hm.origin.y << "\n";
    if (hm.degenerate) std::cout << "degenerate: m = M, uniform heatmap\n";
    if (hm.all_infinite) std::cout << "degenerate: no finite distance, delta at center\n";
    return kExitOk;
  }
};

// ---------------------------------------------------------------- preview

struct PreviewCmd {
  AugmentFlags flags;
  std::string ann, images, out, out_ann;
  std::int64_t image_id = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--ann", ann, "Annotation file")->required();
    cmd->add_option("--images", images, "Image directory")->required();
    cmd->add_option("--image-id", image_id, "Image id")->required();
    cmd->add_option("--out", out, "Output PNG")->required();
    cmd->add_option("--out-ann", out_ann, "Write the output annotations as JSON");
    flags.attach(cmd);
  }

  int run() {
    const FileSettings s = load_settings(flags);
    const ImageTarget t = load_target(ann, images, image_id);
    ib::Rng rng = ib::image_rng(s.cfg.seed, image_id);
    const ib::AugmentedSample sample =
        ib::augment_image(t.image, t.index.annotations_for(image_id), s.cfg, rng);
    ib::write_png(sample.image, out);
    ib::Json anns = ib::Json::array();
    for (const auto& a : sample.annotations) anns.push_back(ib::annotation_to_json(a));
    if (!out_ann.empty()) {
      std::ofstream f(out_ann);
      if (!(f << anns.dump() << "\n")) {
        throw ib::Error(ib::ErrorKind::IoFailure, "cannot write " + out_ann);
      }
    }
    ib::Json prov = ib::Json::array();
    for (const auto& p : sample.provenance) prov.push_back(ib::to_json(p));
    std::cout << ib::Json{{"applied", sample.applied}, {"provenance", prov}}.dump(2) << "\n";
    return kExitOk;
  }
};

// ---------------------------------------------------------------- bench

struct BenchCmd {
  std::vector<std::string> sizes{"360x240"};
  int iters = 3;
  std::uint64_t seed = 1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--size", sizes, "Image size WxH (repeatable)");
    cmd->add_option("--iters", iters, "Timed repetitions per size")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", seed, "Fixture seed");
  }

  int run() {
    std::cout << "kernels: " << ib::simd::isa_name(ib::simd::active_kernels().isa) << "\n";
    for (const std::string& text : sizes) {
      const ib::Size2i size = parse_size(text);
      ib::synth::SceneSpec spec{size.width, size.height, 1, seed};
      const ib::synth::Scene scene = ib::synth::make_scene(spec, 1, 1);
      if (scene.annotations.empty()) {
        throw ib::Error(ib::ErrorKind::InvalidArgument, "size " + text + " is too small");
      }
      const ib::BinaryMask mask = ib::rasterize(scene.annotations[0], size.width, size.height);
      using Clock = std::chrono::steady_clock;
      auto time_ms = [&](auto&& fn) {
        double best = 1e300;
        for (int i = 0; i < iters; ++i) {
          const auto t0 = Clock::now();
          fn();
          best = std::min(best, std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
        }
        return best;
      };
      ib::ConsistencyHeatmap exact, fast;
      const double exact_ms = time_ms([&] { exact = ib::compute_heatmap_exact(scene.image, mask); });
      const double fast_ms = time_ms([&] { fast = ib::compute_heatmap(scene.image, mask); });
      const double r = ib::pearson(exact.value, fast.value);
      std::cout << std::fixed << std::setprecision(3) << "size " << text << ": exact "
                << exact_ms << " ms/heatmap, accelerated " << fast_ms
                << " ms/heatmap, speedup " << exact_ms / fast_ms << "x\n"
                << std::setprecision(6) << "size " << text << ": correlation " << r << " "
                << (r >= 0.8 ? "PASS" : "FAIL") << " (threshold 0.8)\n";
    }
    return kExitOk;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Copy-paste augmentation for instance segmentation datasets", "instaboost"};
  app.set_version_flag("--version", std::string(ib::version()));
  app.require_subcommand(1);

  AugmentCmd augment;
  HeatmapCmd heatmap;
  PreviewCmd preview;
  BenchCmd bench;
  CLI::App* augment_app = app.add_subcommand("augment", "Augment a whole dataset");
  CLI::App* heatmap_app = app.add_subcommand("heatmap", "Export the placement heatmap of one instance");
  CLI::App* preview_app = app.add_subcommand("preview", "Augment a single image");
  CLI::App* bench_app = app.add_subcommand("bench", "Time exact and accelerated heatmaps");
  augment.attach(augment_app);
  heatmap.attach(heatmap_app);
  preview.attach(preview_app);
  bench.attach(bench_app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    // --help and --version; CLI11 prints the help of the right subcommand.
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  CLI::App* active = nullptr;
  try {
    if (augment_app->parsed()) {
      active = augment_app;
      return augment.run();
    }
    if (heatmap_app->parsed()) {
      active = heatmap_app;
      return heatmap.run();
    }
    if (preview_app->parsed()) {
      active = preview_app;
      return preview.run();
    }
    active = bench_app;
    return bench.run();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << active->help();
    return kExitUsage;
  } catch (const ib::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
