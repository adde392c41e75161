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
#include "instaboost/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <exception>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "instaboost/image_io.hpp"
#include "instaboost/maskops.hpp"

namespace instaboost {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool masks_intersect(const BinaryMask& a, const BinaryMask& b) {
  const auto& av = a.values();
  const auto& bv = b.values();
  for (std::size_t i = 0; i < av.size(); ++i) {
    if (av[i] && bv[i]) return true;
  }
  return false;
}

// Picks which instances move this round: all eligible ones, or a random
// subset when a cap is set. Processing order is largest area first.
std::vector<std::size_t> select_instances(const std::vector<std::size_t>& eligible,
                                          const std::vector<std::size_t>& areas,
                                          const std::vector<InstanceAnnotation>& anns,
                                          const AugmentConfig& cfg, Rng& rng) {
  std::vector<std::size_t> chosen = eligible;
  if (cfg.max_instances_per_image && static_cast<std::size_t>(*cfg.max_instances_per_image) <
                                         chosen.size()) {
    for (std::size_t i = chosen.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(i));
      std::swap(chosen[i - 1], chosen[std::min(j, i - 1)]);
    }
    chosen.resize(static_cast<std::size_t>(*cfg.max_instances_per_image));
  }
  std::sort(chosen.begin(), chosen.end(), [&](std::size_t a, std::size_t b) {
    if (areas[a] != areas[b]) return areas[a] > areas[b];
    return anns[a].id < anns[b].id;
  });
  return chosen;
}

}  // namespace

std::string_view to_string(AugmentMode mode) {
  return mode == AugmentMode::MapGuided ? "map_guided" : "random_jitter";
}

AugmentMode parse_mode(std::string_view text) {
  if (text == "map_guided") return AugmentMode::MapGuided;
  if (text == "random_jitter") return AugmentMode::RandomJitter;
  throw Error(ErrorKind::InvalidArgument,
              "mode must be random_jitter or map_guided, got '" + std::string(text) + "'");
}

void check(const AugmentConfig& cfg) {
  if (!(cfg.apply_probability >= 0.0 && cfg.apply_probability <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "apply_probability must lie in [0, 1]");
  }
  if (cfg.max_instances_per_image && *cfg.max_instances_per_image < 0) {
    throw Error(ErrorKind::InvalidArgument, "max_instances_per_image must be non-negative");
  }
  if (!(cfg.feather_radius >= 0.0) || !std::isfinite(cfg.feather_radius)) {
    throw Error(ErrorKind::InvalidArgument, "feather_radius must be a finite value >= 0");
  }
  if (!(cfg.alpha_threshold >= 0.0 && cfg.alpha_threshold < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "alpha_threshold must lie in [0, 1)");
  }
  if (cfg.min_visible_pixels < 1) {
    throw Error(ErrorKind::InvalidArgument, "min_visible_pixels must be positive");
  }
  if (cfg.inpaint.max_iterations < 1 || !(cfg.inpaint.convergence_epsilon > 0.0) ||
      cfg.inpaint.boundary_band < 1) {
    throw Error(ErrorKind::InvalidArgument,
                "inpaint needs max_iterations >= 1, convergence_epsilon > 0, boundary_band >= 1");
  }
  check(cfg.jitter);
  check(cfg.heatmap);
}

StageTimes& StageTimes::operator+=(const StageTimes& o) {
  cut += o.cut;
  inpaint += o.inpaint;
  heatmap += o.heatmap;
  warp += o.warp;
  composite += o.composite;
  return *this;
}

Rng image_rng(std::uint64_t seed, std::int64_t image_id) {
  return Rng(mix_seed(seed ^ static_cast<std::uint64_t>(image_id)));
}

AugmentedSample augment_image(const Image& image, const std::vector<InstanceAnnotation>& anns,
                              const AugmentConfig& cfg, Rng& rng) {
  std::int64_t max_id = 0;
  for (const auto& a : anns) max_id = std::max(max_id, a.id);
  return augment_image(image, anns, cfg, rng, max_id + 1);
}

AugmentedSample augment_image(const Image& image, const std::vector<InstanceAnnotation>& anns,
                              const AugmentConfig& cfg, Rng& rng, std::int64_t first_new_id) {
  check(cfg);
  AugmentedSample out;
  out.image = image;
  out.annotations = anns;

  // One draw decides whether the image is touched at all.
  if (uniform01(rng) >= cfg.apply_probability) return out;
  out.applied = true;

  const int W = image.width();
  const int H = image.height();
  std::vector<BinaryMask> masks(anns.size());
  std::vector<std::size_t> areas(anns.size(), 0);
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < anns.size(); ++i) {
    if (anns[i].iscrowd) continue;
    try {
      masks[i] = rasterize(anns[i], W, H);
      areas[i] = count_foreground(masks[i]);
    } catch (const Error& e) {
      InstanceProvenance p;
      p.source_annotation_id = anns[i].id;
      p.mode = cfg.mode;
      p.failure = std::string(error_kind_name(e.kind()));
      out.provenance.push_back(std::move(p));
      continue;
    }
    if (areas[i] > 0) eligible.push_back(i);
  }

  std::int64_t next_id = first_new_id;
  for (std::size_t idx : select_instances(eligible, areas, anns, cfg, rng)) {
    const InstanceAnnotation& ann = out.annotations[idx];
    InstanceProvenance prov;
    prov.source_annotation_id = ann.id;
    prov.mode = cfg.mode;
    try {
      auto t0 = Clock::now();
      CutResult cut = cut_instance(out.image, ann, cfg.feather_radius);
      prov.original_center = cut.patch.center;
      out.times.cut += seconds_since(t0);

      t0 = Clock::now();
      InpaintResult filled = inpaint(out.image, cut.hole, cfg.inpaint);
      estimate_foreground(cut.patch, out.image, filled.image);
      out.times.inpaint += seconds_since(t0);

      const BBox box = mask_to_bbox(cut.mask);
      AffineTuple t;
      if (cfg.mode == AugmentMode::MapGuided) {
        t0 = Clock::now();
        // The heatmap looks at the unmodified input so earlier pastes do not
        // shape later placements.
        const BinaryMask source_mask = rasterize(anns[idx], W, H);
        ConsistencyHeatmap hm = compute_heatmap(image, source_mask, cfg.heatmap);
        BinaryMask exclusion;
        if (cfg.forbid_overlap) {
          exclusion = BinaryMask(W, H, 0);
          for (std::size_t j = 0; j < masks.size(); ++j) {
            if (j == idx || masks[j].empty()) continue;
            auto& ev = exclusion.values();
            const auto& mv = masks[j].values();
            for (std::size_t k = 0; k < ev.size(); ++k) ev[k] |= mv[k];
          }
        }
        const ProbabilityMap pm = to_probability(hm, cfg.forbid_overlap ? &exclusion : nullptr);
        const Point2i center = sample_center(rng, pm);
        prov.heatmap_used = true;
        out.times.heatmap += seconds_since(t0);
        t = sample_jitter(rng, box.w, box.h, cfg.jitter);
        t.tx = center.x - cut.patch.center.x;
        t.ty = center.y - cut.patch.center.y;
      } else {
        t = sample_jitter(rng, box.w, box.h, cfg.jitter);
      }
      prov.transform = t;
      prov.sampled_center = {cut.patch.center.x + t.tx, cut.patch.center.y + t.ty};

      t0 = Clock::now();
      AlphaInstancePatch warped = warp_patch(cut.patch, t, W, H);
      if (count_alpha_positive(warped) < static_cast<std::size_t>(cfg.min_visible_pixels)) {
        throw Error(ErrorKind::FullyClipped, "too little of the instance stays on the canvas");
      }
      InstanceAnnotation moved =
          transform_annotation(ann, warped, W, H, next_id, cfg.alpha_threshold);
      out.times.warp += seconds_since(t0);

      t0 = Clock::now();
      Image canvas = std::move(filled.image);
      composite_over(canvas, warped);
      out.times.composite += seconds_since(t0);

      // Commit only once every step has succeeded.
      BinaryMask new_mask = rle_decode(*moved.segmentation.rle);
      for (std::size_t j = 0; j < masks.size(); ++j) {
        if (j == idx || masks[j].empty()) continue;
        if (masks_intersect(masks[j], new_mask)) prov.occludes.push_back(out.annotations[j].id);
      }
      masks[idx] = std::move(new_mask);
      out.image = std::move(canvas);
      out.annotations[idx] = std::move(moved);
      prov.moved = true;
      prov.new_annotation_id = next_id++;
    } catch (const Error& e) {
      prov.moved = false;
      prov.failure = std::string(error_kind_name(e.kind()));
    }
    out.provenance.push_back(std::move(prov));
  }
  return out;
}

Json to_json(const InstanceProvenance& p) {
  Json j;
  j["source_annotation_id"] = p.source_annotation_id;
  j["new_annotation_id"] = p.new_annotation_id ? Json(*p.new_annotation_id) : Json(nullptr);
  j["mode"] = std::string(to_string(p.mode));
  j["heatmap_used"] = p.heatmap_used;
  j["moved"] = p.moved;
  j["transform"] = {{"tx", p.transform.tx},
                    {"ty", p.transform.ty},
                    {"scale", p.transform.scale},
                    {"rotation_deg", p.transform.rotation_deg}};
  j["original_center"] = {p.original_center.x, p.original_center.y};
  j["sampled_center"] = {p.sampled_center.x, p.sampled_center.y};
  if (!p.failure.empty()) j["failure"] = p.failure;
  j["occludes"] = p.occludes;
  return j;
}

Json to_json(const RunStats& s) {
  return Json{{"images_processed", s.images_processed},
              {"images_augmented", s.images_augmented},
              {"instances_moved", s.instances_moved},
              {"instance_failures", s.instance_failures},
              {"wall_seconds", s.wall_seconds},
              {"mean_image_seconds", s.mean_image_seconds()},
              {"max_image_seconds", s.max_image_seconds},
              {"stage_seconds",
               {{"read", s.read_seconds},
                {"cut", s.stages.cut},
                {"inpaint", s.stages.inpaint},
                {"heatmap", s.stages.heatmap},
                {"warp", s.stages.warp},
                {"composite", s.stages.composite},
                {"write", s.write_seconds}}}};
}

std::string to_text(const RunStats& s) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(3);
  os << "images: " << s.images_processed << "\n"
     << "images augmented: " << s.images_augmented << "\n"
     << "instances moved: " << s.instances_moved << "\n"
     << "instance failures: " << s.instance_failures << "\n"
     << "wall seconds: " << s.wall_seconds << "\n"
     << "mean image seconds: " << s.mean_image_seconds() << "\n"
     << "stage seconds: read " << s.read_seconds << ", cut " << s.stages.cut << ", inpaint "
     << s.stages.inpaint << ", heatmap " << s.stages.heatmap << ", warp " << s.stages.warp
     << ", composite " << s.stages.composite << ", write " << s.write_seconds << "\n";
  return os.str();
}

namespace {

struct Job {
  const ImageRecord* record = nullptr;
  int copy = 0;
  std::int64_t out_image_id = 0;
  std::string out_file;
};

struct JobResult {
  bool ready = false;
  std::exception_ptr error;
  AugmentedSample sample;
  double read_seconds = 0.0;
  double augment_seconds = 0.0;
};

std::string output_file_name(const std::string& file_name, int copy) {
  std::filesystem::path p(file_name);
  std::string stem = p.stem().string();
  if (copy > 0) stem += "_" + std::to_string(copy);
  return (p.parent_path() / (stem + ".png")).string();
}

std::string describe(const ValidationReport& report, std::size_t limit = 5) {
  std::string msg = std::to_string(report.size()) + " issue(s)";
  for (std::size_t i = 0; i < report.size() && i < limit; ++i) {
    msg += "; " + report[i].record + " " + std::to_string(report[i].id) + ": " +
           to_string(report[i].kind) + " (" + report[i].message + ")";
  }
  return msg;
}

}  // namespace

RunStats augment_dataset(const std::filesystem::path& in_ann, const std::filesystem::path& image_dir,
                         const std::filesystem::path& out_ann,
                         const std::filesystem::path& out_image_dir, const AugmentConfig& cfg,
                         const DatasetRunOptions& options) {
  check(cfg);
  if (options.workers < 1) throw Error(ErrorKind::InvalidArgument, "workers must be >= 1");
  if (options.copies < 1) throw Error(ErrorKind::InvalidArgument, "copies must be >= 1");
  const auto wall_start = Clock::now();

  const DatasetIndex input = parse_dataset(in_ann);
  if (const ValidationReport report = validate(input); !report.empty()) {
    throw Error(ErrorKind::ValidationFailure, "input dataset: " + describe(report));
  }

  std::int64_t max_image_id = 0;
  std::int64_t max_ann_id = 0;
  for (const auto& r : input.images()) max_image_id = std::max(max_image_id, r.id);
  for (const auto& a : input.annotations()) max_ann_id = std::max(max_ann_id, a.id);

  std::vector<Job> jobs;
  for (int copy = 0; copy < options.copies; ++copy) {
    for (const auto& record : input.images()) {
      Job job;
      job.record = &record;
      job.copy = copy;
      job.out_image_id = record.id + static_cast<std::int64_t>(copy) * (max_image_id + 1);
      job.out_file = output_file_name(record.file_name, copy);
      jobs.push_back(std::move(job));
    }
  }

  std::error_code ec;
  std::filesystem::create_directories(out_image_dir, ec);
  if (ec) throw Error(ErrorKind::IoFailure, "cannot create " + out_image_dir.string());

  std::vector<JobResult> results(jobs.size());
  std::mutex mutex;
  std::condition_variable done_cv;
  std::atomic<std::size_t> next_job{0};
  std::atomic<bool> abort{false};

  auto worker = [&] {
    for (;;) {
      // A claimed job always runs so the collector never waits on a gap.
      if (abort.load()) return;
      const std::size_t i = next_job.fetch_add(1);
      if (i >= jobs.size()) return;
      JobResult r;
      try {
        const Job& job = jobs[i];
        auto t0 = Clock::now();
        Image img = read_image(image_dir / job.record->file_name);
        r.read_seconds = seconds_since(t0);
        if (img.width() != job.record->width || img.height() != job.record->height) {
          throw Error(ErrorKind::IoFailure,
                      job.record->file_name + " does not match its recorded size");
        }
        t0 = Clock::now();
        Rng rng = image_rng(cfg.seed, job.out_image_id);
        r.sample = augment_image(img, input.annotations_for(job.record->id), cfg, rng,
                                 max_ann_id + 1);
        r.augment_seconds = seconds_since(t0);
      } catch (...) {
        r.error = std::current_exception();
        abort.store(true);
      }
      std::lock_guard<std::mutex> lock(mutex);
      r.ready = true;
      results[i] = std::move(r);
      done_cv.notify_all();
    }
  };

  std::vector<std::thread> pool;
  const int nthreads =
      std::min<int>(options.workers, static_cast<int>(std::max<std::size_t>(1, jobs.size())));
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);

  // Collector: consumes results in job order so ids and files come out the
  // same whatever the worker count.
  RunStats stats;
  std::vector<ImageRecord> out_images;
  std::vector<InstanceAnnotation> out_anns;
  std::int64_t next_ann_id = max_ann_id + 1;
  std::exception_ptr failure;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    JobResult r;
    {
      std::unique_lock<std::mutex> lock(mutex);
      done_cv.wait(lock, [&] { return results[i].ready; });
      r = std::move(results[i]);
      results[i] = JobResult{};
    }
    if (r.error) {
      failure = r.error;
      abort.store(true);
      break;
    }
    const Job& job = jobs[i];
    ImageRecord rec = *job.record;
    rec.id = job.out_image_id;
    rec.file_name = job.out_file;
    out_images.push_back(rec);

    // Moved annotations and every annotation of an extra copy need fresh
    // ids; they are handed out here in output order.
    for (auto& ann : r.sample.annotations) {
      const bool moved = std::any_of(r.sample.provenance.begin(), r.sample.provenance.end(),
                                     [&](const InstanceProvenance& p) {
                                       return p.moved && p.new_annotation_id == ann.id;
                                     });
      if (job.copy > 0 || moved) {
        ann.id = next_ann_id++;
      }
      ann.image_id = rec.id;
      out_anns.push_back(ann);
    }
    for (const auto& p : r.sample.provenance) {
      if (p.moved) ++stats.instances_moved;
      else ++stats.instance_failures;
    }

    const auto t0 = Clock::now();
    std::filesystem::path dest = out_image_dir / rec.file_name;
    std::filesystem::create_directories(dest.parent_path(), ec);
    write_png(r.sample.image, dest);
    stats.write_seconds += seconds_since(t0);

    ++stats.images_processed;
    if (r.sample.applied) ++stats.images_augmented;
    stats.read_seconds += r.read_seconds;
    stats.augment_seconds += r.augment_seconds;
    stats.max_image_seconds = std::max(stats.max_image_seconds, r.augment_seconds);
    stats.stages += r.sample.times;
  }
  abort.store(failure != nullptr);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  const DatasetIndex output(std::move(out_images), std::move(out_anns),
                            std::vector<Category>(input.categories()), input.extra());
  if (const ValidationReport report = validate(output); !report.empty()) {
    throw Error(ErrorKind::ValidationFailure, "output dataset: " + describe(report));
  }
  serialize_dataset(output, out_ann);
  stats.wall_seconds = seconds_since(wall_start);
  return stats;
}

}  // namespace instaboost
