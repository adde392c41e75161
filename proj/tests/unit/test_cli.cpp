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

// Drives the command-line tool as a subprocess.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <regex>

#include "instaboost/annotations.hpp"
#include "instaboost/binding.hpp"
#include "instaboost/image_io.hpp"
#include "instaboost/maskops.hpp"
#include "instaboost/synthetic.hpp"
#include "oracles.hpp"

namespace ib = instaboost;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

CliRun run_cli(const std::string& args, const fs::path& scratch) {
  const fs::path out = scratch / "stdout.txt";
  const fs::path err = scratch / "stderr.txt";
  const std::string cmd = std::string("\"") + INSTABOOST_CLI_PATH + "\" " + args + " >\"" +
                          out.string() + "\" 2>\"" + err.string() + "\"";
  const int status = std::system(cmd.c_str());
  CliRun r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = oracle::read_file(out);
  r.err = oracle::read_file(err);
  return r;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = oracle::scratch_dir(std::string("cli_") + info->name());
  }
  CliRun run(const std::string& args) { return run_cli(args, dir_); }
  fs::path dataset(int n, ib::synth::SceneSpec spec = {160, 120, 2, 31}) {
    return ib::synth::write_dataset(dir_ / "in", n, spec);
  }
  fs::path dir_;
};

TEST_F(Cli, HelpExitsCleanly) {
  const CliRun r = run("--help");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("augment"), std::string::npos);
  EXPECT_EQ(run("augment --help").code, 0);
}

TEST_F(Cli, MissingInputsIsAUsageError) {
  const CliRun r = run("augment --images x --out-ann y --out-images z");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--ann"), std::string::npos);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("augment --no-such-flag").code, 2);
  EXPECT_EQ(run("augment --mode sideways").code, 2);
}

TEST_F(Cli, AugmentsADataset) {
  const fs::path ann = dataset(10);
  const CliRun r = run("augment --ann " + q(ann) + " --images " + q(dir_ / "in" / "images") +
                    " --out-ann " + q(dir_ / "out" / "ann.json") + " --out-images " +
                    q(dir_ / "out" / "images") + " --apply-probability 1 --json-stats");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("images: 10"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("instances moved:"), std::string::npos);
  EXPECT_NE(r.out.find("\"images_processed\":10"), std::string::npos);
  const ib::DatasetIndex out = ib::parse_dataset(dir_ / "out" / "ann.json");
  EXPECT_TRUE(ib::validate(out).empty());
  EXPECT_EQ(out.images().size(), 10u);
}

TEST_F(Cli, SameSeedGivesIdenticalOutputs) {
  const fs::path ann = dataset(4);
  for (const char* tag : {"a", "b", "c"}) {
    const std::string seed = std::string(tag) == "c" ? "8" : "7";
    const CliRun r = run("augment --ann " + q(ann) + " --images " + q(dir_ / "in" / "images") +
                      " --out-ann " + q(dir_ / tag / "ann.json") + " --out-images " +
                      q(dir_ / tag / "images") + " --seed " + seed + " --apply-probability 1" +
                      (std::string(tag) == "b" ? " --workers 2" : ""));
    ASSERT_EQ(r.code, 0) << r.err;
  }
  EXPECT_EQ(oracle::tree_contents(dir_ / "a"), oracle::tree_contents(dir_ / "b"));
  EXPECT_NE(oracle::tree_contents(dir_ / "a"), oracle::tree_contents(dir_ / "c"));
}

TEST_F(Cli, ConfigFileSuppliesPathsAndFlagsWin) {
  const fs::path ann = dataset(2);
  const ib::Json cfg = {{"ann", ann.string()},
                        {"images", (dir_ / "in" / "images").string()},
                        {"out_ann", (dir_ / "out" / "ann.json").string()},
                        {"out_images", (dir_ / "out" / "images").string()},
                        {"apply_probability", 1.0},
                        {"copies", 2}};
  std::ofstream(dir_ / "cfg.json") << cfg.dump();
  CliRun r = run("augment --config " + q(dir_ / "cfg.json") + " --apply-probability 0");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("images: 4"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("images augmented: 0"), std::string::npos) << r.out;

  std::ofstream(dir_ / "bad.json") << R"({"ann": "x", "jitter": {"shear": 1}})";
  r = run("augment --config " + q(dir_ / "bad.json"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("shear"), std::string::npos);
}

TEST_F(Cli, DirtyInputIsRefused) {
  const fs::path ann = dataset(2);
  ib::Json doc = ib::Json::parse(oracle::read_file(ann));
  doc["annotations"][0]["image_id"] = 4242;
  std::ofstream(dir_ / "dirty.json") << doc.dump();
  const CliRun r = run("augment --ann " + q(dir_ / "dirty.json") + " --images " +
                    q(dir_ / "in" / "images") + " --out-ann " + q(dir_ / "o.json") +
                    " --out-images " + q(dir_ / "o"));
  EXPECT_EQ(r.code, 3) << r.err;
  std::ofstream(dir_ / "junk.json") << "{ not json";
  EXPECT_EQ(run("augment --ann " + q(dir_ / "junk.json") + " --images a --out-ann b --out-images c")
                .code,
            3);
}

TEST_F(Cli, HeatmapReportsAndWrites) {
  const fs::path ann = dataset(1);
  const ib::DatasetIndex idx = ib::parse_dataset(ann);
  const std::int64_t aid = idx.annotations().front().id;
  const CliRun r = run("heatmap --ann " + q(ann) + " --images " + q(dir_ / "in" / "images") +
                    " --image-id 1 --annotation-id " + std::to_string(aid) + " --out " +
                    q(dir_ / "hm.png"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("argmax:"), std::string::npos);
  const ib::Image png = ib::read_image(dir_ / "hm.png");
  EXPECT_EQ(png.width(), 160);
  EXPECT_EQ(png.height(), 120);
}

TEST_F(Cli, UnknownIdsAreReferenceErrors) {
  const fs::path ann = dataset(1);
  const std::string base = "heatmap --ann " + q(ann) + " --images " + q(dir_ / "in" / "images");
  EXPECT_EQ(run(base + " --image-id 99 --annotation-id 1 --out " + q(dir_ / "x.png")).code, 3);
  EXPECT_EQ(run(base + " --image-id 1 --annotation-id 999 --out " + q(dir_ / "x.png")).code, 3);
}

TEST_F(Cli, UnwritableOutputIsAnIoError) {
  const fs::path ann = dataset(1);
  const ib::DatasetIndex idx = ib::parse_dataset(ann);
  const std::string base = "heatmap --ann " + q(ann) + " --images " + q(dir_ / "in" / "images") +
                           " --image-id 1 --annotation-id " +
                           std::to_string(idx.annotations().front().id);
  // /proc refuses new files even for root.
  EXPECT_EQ(run(base + " --out /proc/instaboost_heatmap.png").code, 4);
  EXPECT_EQ(run("augment --ann " + q(dir_ / "absent.json") +
                " --images a --out-ann b --out-images c")
                .code,
            4);
}

// Writes a single-image dataset whose only instance sits on the given image.
fs::path single_instance_dataset(const fs::path& dir, ib::Image img) {
  auto a = ib::synth::ellipse_instance(1, 1, 1, img.width() / 2.0, img.height() / 2.0, 14, 10);
  const ib::BinaryMask m = ib::rasterize(a, img.width(), img.height());
  a.area = double(ib::count_foreground(m));
  a.bbox = ib::mask_to_bbox(m);
  fs::create_directories(dir / "images");
  ib::write_png(img, dir / "images" / "one.png");
  ib::Json doc = {{"images", {{{"id", 1}, {"file_name", "one.png"}, {"width", img.width()},
                               {"height", img.height()}}}},
                  {"annotations", {ib::annotation_to_json(a)}},
                  {"categories", {{{"id", 1}, {"name", "thing"}}}}};
  std::ofstream(dir / "ann.json") << doc.dump();
  return dir / "ann.json";
}

TEST_F(Cli, ConstantImageGivesADegenerateHeatmap) {
  const fs::path ann = single_instance_dataset(dir_ / "flat", ib::synth::constant_image(180, 120, 90, 90, 90));
  const CliRun r = run("heatmap --ann " + q(ann) + " --images " + q(dir_ / "flat" / "images") +
                    " --image-id 1 --annotation-id 1 --out " + q(dir_ / "flat.png"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("degenerate: m = M"), std::string::npos) << r.out;
}

TEST_F(Cli, StripedImageArgmaxSitsAtTheCenter) {
  ib::Image img = ib::synth::striped_scene(180, 120, 12.0, true, 4);
  const fs::path ann = single_instance_dataset(dir_ / "stripes", img);
  const CliRun r = run("heatmap --ann " + q(ann) + " --images " + q(dir_ / "stripes" / "images") +
                    " --image-id 1 --annotation-id 1 --out " + q(dir_ / "s.png"));
  ASSERT_EQ(r.code, 0) << r.err;
  std::smatch m1, m2;
  ASSERT_TRUE(std::regex_search(r.out, m1, std::regex(R"(argmax: (-?\d+) (-?\d+))")));
  ASSERT_TRUE(std::regex_search(r.out, m2, std::regex(R"(center: (-?\d+) (-?\d+))")));
  EXPECT_LE(std::abs(std::stoi(m1[1]) - std::stoi(m2[1])), 1);
  EXPECT_LE(std::abs(std::stoi(m1[2]) - std::stoi(m2[2])), 1);
}

TEST_F(Cli, PreviewMatchesTheBufferEntryPoint) {
  const fs::path ann = dataset(2);
  const CliRun r = run("preview --ann " + q(ann) + " --images " + q(dir_ / "in" / "images") +
                    " --image-id 2 --seed 13 --apply-probability 1 --out " + q(dir_ / "p.png") +
                    " --out-ann " + q(dir_ / "p.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"applied\": true"), std::string::npos);

  const ib::DatasetIndex idx = ib::parse_dataset(ann);
  const ib::Image img = ib::read_image(dir_ / "in" / "images" / idx.find_image(2)->file_name);
  ib::Json anns = ib::Json::array();
  for (const auto& a : idx.annotations_for(2)) anns.push_back(ib::annotation_to_json(a));
  const ib::BufferResult b = ib::augment_one(img.bytes().data(), img.bytes().size(), img.height(),
                                             img.width(), anns, {{"apply_probability", "1"}}, 13, 2);
  EXPECT_EQ(ib::read_image(dir_ / "p.png").bytes(), b.rgb);
  EXPECT_EQ(ib::Json::parse(oracle::read_file(dir_ / "p.json")), b.annotations);
}

TEST_F(Cli, BenchAtTheWorkingSizeIsExact) {
  const CliRun r = run("bench --size 180x120 --iters 1");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("size 180x120: correlation 1.000000 PASS"), std::string::npos) << r.out;
  EXPECT_EQ(run("bench --size 12by3").code, 2);
}

TEST_F(Cli, BenchAtTwiceTheWorkingSizePasses) {
  const CliRun r = run("bench --size 360x240 --iters 1");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("PASS (threshold 0.8)"), std::string::npos) << r.out;
}

}  // namespace
