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
#include "instaboost/annotations.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace instaboost {
namespace {

constexpr char kImages[] = "images";
constexpr char kAnnotations[] = "annotations";
constexpr char kCategories[] = "categories";
constexpr char kId[] = "id";
constexpr char kImageId[] = "image_id";
constexpr char kCategoryId[] = "category_id";
constexpr char kFileName[] = "file_name";
constexpr char kWidth[] = "width";
constexpr char kHeight[] = "height";
constexpr char kName[] = "name";
constexpr char kSegmentation[] = "segmentation";
constexpr char kBbox[] = "bbox";
constexpr char kArea[] = "area";
constexpr char kIsCrowd[] = "iscrowd";
constexpr char kSize[] = "size";
constexpr char kCounts[] = "counts";

// Bboxes produced by float tooling may overshoot the frame by rounding.
constexpr double kBoundsTolerance = 1e-3;

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorKind::MalformedDocument, what);
}

Json strip_keys(const Json& record, std::initializer_list<const char*> keys) {
  Json extra = Json::object();
  for (auto it = record.begin(); it != record.end(); ++it) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; })) {
      extra[it.key()] = it.value();
    }
  }
  return extra;
}

std::int64_t require_int(const Json& record, const char* key, const std::string& where) {
  auto it = record.find(key);
  if (it == record.end() || !it->is_number()) {
    malformed(where + ": missing or non-numeric '" + key + "'");
  }
  const double v = it->get<double>();
  if (it->is_number_float() && v != std::floor(v)) {
    malformed(where + ": non-integer '" + key + "'");
  }
  return it->is_number_float() ? static_cast<std::int64_t>(v) : it->get<std::int64_t>();
}

std::string record_label(const Json& record, const char* kind, std::size_t position) {
  std::ostringstream out;
  out << kind;
  if (record.is_object() && record.contains(kId) && record[kId].is_number()) {
    out << " id " << record[kId].dump();
  } else {
    out << " #" << position;
  }
  return out.str();
}

RleMask rle_from_json(const Json& seg, const std::string& where) {
  RleMask rle;
  const auto size = seg.find(kSize);
  const auto counts = seg.find(kCounts);
  if (size == seg.end() || !size->is_array() || size->size() != 2 || counts == seg.end()) {
    malformed(where + ": RLE segmentation needs 'size' [h, w] and 'counts'");
  }
  rle.height = (*size)[0].get<int>();
  rle.width = (*size)[1].get<int>();
  if (counts->is_string()) {
    rle.compressed = counts->get<std::string>();
    rle.counts = rle_counts_from_string(*rle.compressed);
  } else if (counts->is_array()) {
    for (const auto& c : *counts) {
      if (!c.is_number_integer() || c.get<std::int64_t>() < 0) {
        malformed(where + ": RLE counts must be non-negative integers");
      }
      rle.counts.push_back(c.get<std::uint32_t>());
    }
  } else {
    malformed(where + ": RLE counts must be a string or an array");
  }
  return rle;
}

Json rle_to_json(const RleMask& rle) {
  Json seg = Json::object();
  seg[kSize] = Json::array({rle.height, rle.width});
  if (rle.compressed) {
    seg[kCounts] = *rle.compressed;
  } else {
    seg[kCounts] = rle.counts;
  }
  return seg;
}

ImageRecord image_from_json(const Json& record, std::size_t position) {
  const std::string where = record_label(record, "image", position);
  if (!record.is_object()) malformed(where + ": not an object");
  ImageRecord image;
  image.id = require_int(record, kId, where);
  image.width = static_cast<int>(require_int(record, kWidth, where));
  image.height = static_cast<int>(require_int(record, kHeight, where));
  const auto name = record.find(kFileName);
  if (name == record.end() || !name->is_string()) {
    malformed(where + ": missing 'file_name'");
  }
  image.file_name = name->get<std::string>();
  image.extra = strip_keys(record, {kId, kWidth, kHeight, kFileName});
  return image;
}

Json image_to_json(const ImageRecord& image) {
  Json record = image.extra;
  record[kId] = image.id;
  record[kFileName] = image.file_name;
  record[kWidth] = image.width;
  record[kHeight] = image.height;
  return record;
}

Category category_from_json(const Json& record, std::size_t position) {
  const std::string where = record_label(record, "category", position);
  if (!record.is_object()) malformed(where + ": not an object");
  Category category;
  category.id = require_int(record, kId, where);
  const auto name = record.find(kName);
  if (name != record.end() && name->is_string()) category.name = name->get<std::string>();
  category.extra = strip_keys(record, {kId, kName});
  return category;
}

Json category_to_json(const Category& category) {
  Json record = category.extra;
  record[kId] = category.id;
  record[kName] = category.name;
  return record;
}

template <class T>
std::vector<T> sorted_by_id(std::vector<T> items) {
  std::stable_sort(items.begin(), items.end(), [](const T& a, const T& b) { return a.id < b.id; });
  return items;
}

}  // namespace

// ---------------------------------------------------------------------------
// RLE

RleMask rle_encode(const BinaryMask& mask, bool compressed) {
  RleMask rle;
  rle.height = mask.height();
  rle.width = mask.width();
  std::uint8_t current = 0;
  std::uint32_t run = 0;
  for (int x = 0; x < mask.width(); ++x) {
    for (int y = 0; y < mask.height(); ++y) {
      const std::uint8_t v = mask(x, y) ? 1 : 0;
      if (v != current) {
        rle.counts.push_back(run);
        run = 0;
        current = v;
      }
      ++run;
    }
  }
  rle.counts.push_back(run);
  if (compressed) rle.compressed = rle_counts_to_string(rle.counts);
  return rle;
}

BinaryMask rle_decode(const RleMask& rle) {
  BinaryMask mask(rle.width, rle.height, 0);
  const std::size_t total = mask.area();
  std::size_t pos = 0;
  std::uint8_t value = 0;
  for (std::uint32_t run : rle.counts) {
    if (pos + run > total) {
      throw Error(ErrorKind::MalformedDocument, "RLE counts exceed mask size");
    }
    if (value) {
      for (std::size_t k = pos; k < pos + run; ++k) {
        const int x = static_cast<int>(k / static_cast<std::size_t>(rle.height));
        const int y = static_cast<int>(k % static_cast<std::size_t>(rle.height));
        mask(x, y) = 1;
      }
    }
    pos += run;
    value ^= 1;
  }
  return mask;
}

std::uint64_t rle_area(const RleMask& rle) {
  std::uint64_t area = 0;
  for (std::size_t i = 1; i < rle.counts.size(); i += 2) area += rle.counts[i];
  return area;
}

// Each count (delta-coded against the count two positions back, from the
// third one on) is written as 5-bit groups, low group first, offset by 48;
// bit 0x20 marks continuation and bit 0x10 carries the sign.
std::string rle_counts_to_string(const std::vector<std::uint32_t>& counts) {
  std::string out;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    long long x = counts[i];
    if (i > 2) x -= static_cast<long long>(counts[i - 2]);
    bool more = true;
    while (more) {
      long long c = x & 0x1f;
      x >>= 5;
      more = (c & 0x10) ? x != -1 : x != 0;
      if (more) c |= 0x20;
      out.push_back(static_cast<char>(c + 48));
    }
  }
  return out;
}

std::vector<std::uint32_t> rle_counts_from_string(const std::string& text) {
  std::vector<std::uint32_t> counts;
  std::size_t p = 0;
  while (p < text.size()) {
    long long x = 0;
    int k = 0;
    bool more = true;
    while (more) {
      if (p >= text.size()) malformed("truncated RLE string");
      const long long c = static_cast<long long>(static_cast<unsigned char>(text[p])) - 48;
      if (c < 0 || c > 63) malformed("invalid character in RLE string");
      x |= (c & 0x1f) << (5 * k);
      more = (c & 0x20) != 0;
      ++p;
      ++k;
      if (!more && (c & 0x10)) x |= -1LL << (5 * k);
    }
    if (counts.size() > 2) x += static_cast<long long>(counts[counts.size() - 2]);
    if (x < 0) malformed("negative run in RLE string");
    counts.push_back(static_cast<std::uint32_t>(x));
  }
  return counts;
}

// ---------------------------------------------------------------------------
// Records

InstanceAnnotation annotation_from_json(const Json& record) {
  const std::string where = record_label(record, "annotation", 0);
  if (!record.is_object()) malformed(where + ": not an object");
  InstanceAnnotation ann;
  try {
    ann.id = require_int(record, kId, where);
    ann.image_id = require_int(record, kImageId, where);
    ann.category_id = require_int(record, kCategoryId, where);

    const auto seg = record.find(kSegmentation);
    if (seg == record.end()) malformed(where + ": missing 'segmentation'");
    if (seg->is_object()) {
      ann.segmentation.rle = rle_from_json(*seg, where);
    } else if (seg->is_array()) {
      for (const auto& poly : *seg) {
        if (!poly.is_array()) malformed(where + ": polygon is not an array");
        Polygon p;
        p.reserve(poly.size());
        for (const auto& v : poly) {
          if (!v.is_number()) malformed(where + ": non-numeric polygon coordinate");
          p.push_back(v.get<double>());
        }
        ann.segmentation.polygons.push_back(std::move(p));
      }
    } else {
      malformed(where + ": 'segmentation' must be a polygon list or an RLE object");
    }

    const auto bbox = record.find(kBbox);
    if (bbox != record.end()) {
      if (!bbox->is_array() || bbox->size() != 4) malformed(where + ": 'bbox' needs 4 numbers");
      ann.bbox = {(*bbox)[0].get<double>(), (*bbox)[1].get<double>(), (*bbox)[2].get<double>(),
                  (*bbox)[3].get<double>()};
    }
    const auto area = record.find(kArea);
    if (area != record.end()) ann.area = area->get<double>();
    const auto crowd = record.find(kIsCrowd);
    if (crowd != record.end()) {
      ann.iscrowd = crowd->is_boolean() ? crowd->get<bool>() : crowd->get<int>() != 0;
    }
  } catch (const nlohmann::json::exception& e) {
    malformed(where + ": " + e.what());
  }
  ann.extra = strip_keys(record, {kId, kImageId, kCategoryId, kSegmentation, kBbox, kArea, kIsCrowd});
  return ann;
}

Json annotation_to_json(const InstanceAnnotation& ann) {
  Json record = ann.extra;
  record[kId] = ann.id;
  record[kImageId] = ann.image_id;
  record[kCategoryId] = ann.category_id;
  if (ann.segmentation.rle) {
    record[kSegmentation] = rle_to_json(*ann.segmentation.rle);
  } else {
    record[kSegmentation] = ann.segmentation.polygons;
  }
  record[kBbox] = Json::array({ann.bbox.x, ann.bbox.y, ann.bbox.w, ann.bbox.h});
  record[kArea] = ann.area;
  record[kIsCrowd] = ann.iscrowd ? 1 : 0;
  return record;
}

// ---------------------------------------------------------------------------
// DatasetIndex

DatasetIndex::DatasetIndex(std::vector<ImageRecord> images,
                           std::vector<InstanceAnnotation> annotations,
                           std::vector<Category> categories, Json extra)
    : images_(std::move(images)), annotations_(std::move(annotations)),
      categories_(std::move(categories)), extra_(std::move(extra)) {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    image_pos_.emplace(images_[i].id, i);
    by_image_[images_[i].id];
  }
  for (std::size_t i = 0; i < annotations_.size(); ++i) {
    annotation_pos_.emplace(annotations_[i].id, i);
    by_image_[annotations_[i].image_id].push_back(annotations_[i].id);
  }
}

const ImageRecord* DatasetIndex::find_image(std::int64_t id) const {
  const auto it = image_pos_.find(id);
  return it == image_pos_.end() ? nullptr : &images_[it->second];
}

const InstanceAnnotation* DatasetIndex::find_annotation(std::int64_t id) const {
  const auto it = annotation_pos_.find(id);
  return it == annotation_pos_.end() ? nullptr : &annotations_[it->second];
}

const std::vector<std::int64_t>& DatasetIndex::annotation_ids_for(std::int64_t image_id) const {
  static const std::vector<std::int64_t> kNone;
  const auto it = by_image_.find(image_id);
  return it == by_image_.end() ? kNone : it->second;
}

std::vector<InstanceAnnotation> DatasetIndex::annotations_for(std::int64_t image_id) const {
  std::vector<InstanceAnnotation> out;
  for (std::int64_t id : annotation_ids_for(image_id)) out.push_back(*find_annotation(id));
  return out;
}

std::map<std::int64_t, std::string> DatasetIndex::category_names() const {
  std::map<std::int64_t, std::string> names;
  for (const auto& c : categories_) names[c.id] = c.name;
  return names;
}

bool DatasetIndex::same_content(const DatasetIndex& other) const {
  return extra_ == other.extra_ && sorted_by_id(images_) == sorted_by_id(other.images_) &&
         sorted_by_id(annotations_) == sorted_by_id(other.annotations_) &&
         sorted_by_id(categories_) == sorted_by_id(other.categories_);
}

DatasetIndex dataset_from_json(const Json& document) {
  if (!document.is_object()) malformed("top level is not an object");
  for (const char* key : {kImages, kAnnotations}) {
    if (!document.contains(key) || !document[key].is_array()) {
      malformed(std::string("missing array '") + key + "'");
    }
  }
  std::vector<ImageRecord> images;
  std::vector<InstanceAnnotation> annotations;
  std::vector<Category> categories;
  std::size_t pos = 0;
  for (const auto& rec : document[kImages]) images.push_back(image_from_json(rec, pos++));
  for (const auto& rec : document[kAnnotations]) annotations.push_back(annotation_from_json(rec));
  if (document.contains(kCategories)) {
    if (!document[kCategories].is_array()) malformed("'categories' is not an array");
    pos = 0;
    for (const auto& rec : document[kCategories]) categories.push_back(category_from_json(rec, pos++));
  }
  return DatasetIndex(std::move(images), std::move(annotations), std::move(categories),
                      strip_keys(document, {kImages, kAnnotations, kCategories}));
}

Json dataset_to_json(const DatasetIndex& index) {
  Json document = index.extra();
  Json images = Json::array();
  for (const auto& image : index.images()) images.push_back(image_to_json(image));
  Json annotations = Json::array();
  for (const auto& ann : index.annotations()) annotations.push_back(annotation_to_json(ann));
  Json categories = Json::array();
  for (const auto& category : index.categories()) categories.push_back(category_to_json(category));
  document[kImages] = std::move(images);
  document[kAnnotations] = std::move(annotations);
  document[kCategories] = std::move(categories);
  return document;
}

DatasetIndex parse_dataset(const std::filesystem::path& annotation_file) {
  std::ifstream in(annotation_file, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::IoFailure, "cannot open " + annotation_file.string());
  }
  Json document;
  try {
    document = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    malformed(annotation_file.string() + ": " + e.what());
  }
  DatasetIndex index = dataset_from_json(document);
  for (const auto& ann : index.annotations()) {
    if (index.find_image(ann.image_id) == nullptr) {
      throw Error(ErrorKind::DanglingReference,
                  "annotation id " + std::to_string(ann.id) + " references missing image id " +
                      std::to_string(ann.image_id));
    }
  }
  return index;
}

void serialize_dataset(const DatasetIndex& index, const std::filesystem::path& out) {
  std::ofstream file(out, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorKind::IoFailure, "cannot write " + out.string());
  file << dataset_to_json(index).dump();
  file.flush();
  if (!file) throw Error(ErrorKind::IoFailure, "write failed for " + out.string());
}

// ---------------------------------------------------------------------------
// Validation

std::string to_string(IssueKind kind) {
  switch (kind) {
    case IssueKind::InvalidImage: return "invalid-image";
    case IssueKind::DuplicateId: return "duplicate-id";
    case IssueKind::DanglingImage: return "dangling-image";
    case IssueKind::DanglingCategory: return "dangling-category";
    case IssueKind::DegeneratePolygon: return "degenerate-polygon";
    case IssueKind::BBoxOutOfBounds: return "bbox-out-of-bounds";
    case IssueKind::NonPositiveArea: return "non-positive-area";
    case IssueKind::RleSizeMismatch: return "rle-size-mismatch";
    case IssueKind::EmptySegmentation: return "empty-segmentation";
  }
  return "unknown";
}

ValidationReport validate(const DatasetIndex& index) {
  ValidationReport report;
  auto add = [&](IssueKind kind, const char* record, std::int64_t id, std::string message) {
    report.push_back({kind, record, id, std::move(message)});
  };

  std::set<std::int64_t> seen;
  for (const auto& image : index.images()) {
    if (!seen.insert(image.id).second) add(IssueKind::DuplicateId, "image", image.id, "duplicate image id");
    if (image.width <= 0 || image.height <= 0) {
      add(IssueKind::InvalidImage, "image", image.id, "non-positive dimensions");
    } else if (image.file_name.empty()) {
      add(IssueKind::InvalidImage, "image", image.id, "empty file_name");
    }
  }
  seen.clear();
  std::set<std::int64_t> category_ids;
  for (const auto& category : index.categories()) {
    if (!category_ids.insert(category.id).second) {
      add(IssueKind::DuplicateId, "category", category.id, "duplicate category id");
    }
  }

  for (const auto& ann : index.annotations()) {
    if (!seen.insert(ann.id).second) {
      add(IssueKind::DuplicateId, "annotation", ann.id, "duplicate annotation id");
    }
    const ImageRecord* image = index.find_image(ann.image_id);
    if (image == nullptr) {
      add(IssueKind::DanglingImage, "annotation", ann.id,
          "image id " + std::to_string(ann.image_id) + " does not exist");
    }
    if (!index.categories().empty() && !category_ids.contains(ann.category_id)) {
      add(IssueKind::DanglingCategory, "annotation", ann.id,
          "category id " + std::to_string(ann.category_id) + " does not exist");
    }
    const auto& seg = ann.segmentation;
    if (seg.rle) {
      if (image != nullptr && (seg.rle->height != image->height || seg.rle->width != image->width)) {
        add(IssueKind::RleSizeMismatch, "annotation", ann.id, "RLE size differs from image size");
      }
    } else if (seg.polygons.empty()) {
      add(IssueKind::EmptySegmentation, "annotation", ann.id, "no polygons");
    } else {
      for (const auto& poly : seg.polygons) {
        if (poly.size() < 6 || poly.size() % 2 != 0) {
          add(IssueKind::DegeneratePolygon, "annotation", ann.id,
              "polygon with " + std::to_string(poly.size() / 2) + " vertices");
          break;
        }
      }
    }
    if (image != nullptr) {
      const BBox& b = ann.bbox;
      const bool inside = b.x >= -kBoundsTolerance && b.y >= -kBoundsTolerance && b.w >= 0 &&
                          b.h >= 0 && b.x + b.w <= image->width + kBoundsTolerance &&
                          b.y + b.h <= image->height + kBoundsTolerance;
      if (!inside) add(IssueKind::BBoxOutOfBounds, "annotation", ann.id, "bbox outside image");
    }
    if (!(ann.area > 0.0)) add(IssueKind::NonPositiveArea, "annotation", ann.id, "area <= 0");
  }
  return report;
}

}  // namespace instaboost
