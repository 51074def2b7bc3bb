// Copyright 2026 The RIP Authors
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

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "rip/csv_report.hpp"
#include "rip/engine.hpp"
#include "rip/image_io.hpp"
#include "rip/model_io.hpp"
#include "rip/pipeline.hpp"

namespace rip {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int status = 0;
  std::string output;  // stdout and stderr
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string("\"") + RIP_CLI_PATH + "\" " + args + " 2>&1";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {-1, "popen failed"};
  char buf[4096];
  while (std::fgets(buf, sizeof(buf), pipe) != nullptr) r.output += buf;
  r.status = pclose(pipe);
  return r;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("rip_cli_test_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_ / "corpus");
    // Small synthetic corpus: smooth gradients with texture.
    for (int i = 0; i < 3; ++i) {
      Plane p(64, 48);
      for (int r = 0; r < 48; ++r) {
        for (int c = 0; c < 64; ++c) {
          p(r, c) = (r * (i + 1) + c * (3 - i) + (r * c) % (7 + i)) % 256;
        }
      }
      write_pgm(p, dir_ / "corpus" / ("img" + std::to_string(i) + ".pgm"));
    }
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path dir_;
};

TEST_F(Cli, BuildModesWritesDesignedSet) {
  const CliRun r = run("build-modes --block-size 8 --modes 33 --out " + q(dir_ / "m.ripm"));
  ASSERT_EQ(r.status, 0) << r.output;
  const PredictorSet set = load_model(dir_ / "m.ripm");
  EXPECT_EQ(set.size(), 33);
  EXPECT_EQ(set.provenance(), Provenance::kDesignedUniform);
  EXPECT_EQ(set.geometry().block_size(), 8);
  ASSERT_EQ(run("build-modes --block-size 16 --modes hevc --out " + q(dir_ / "h.ripm")).status, 0);
  EXPECT_EQ(load_model(dir_ / "h.ripm").provenance(), Provenance::kDesignedHevc);
}

TEST_F(Cli, TrainIsReproducible) {
  ASSERT_EQ(run("build-modes --block-size 4 --modes 9 --out " + q(dir_ / "m.ripm")).status, 0);
  for (const char* out : {"a.ripm", "b.ripm"}) {
    const CliRun r = run("train --corpus " + q(dir_ / "corpus") + " --init " + q(dir_ / "m.ripm") +
                      " --lambda 1.0 --iters 5 --patches 200 --seed 7 --out " + q(dir_ / out));
    ASSERT_EQ(r.status, 0) << r.output;
  }
  EXPECT_EQ(slurp(dir_ / "a.ripm"), slurp(dir_ / "b.ripm"));
  EXPECT_EQ(load_model(dir_ / "a.ripm").provenance(), Provenance::kRipTrained);

  // Same patches through extract-patches and --dataset.
  ASSERT_EQ(run("extract-patches --corpus " + q(dir_ / "corpus") +
                " --block-size 4 --patches 200 --seed 7 --out " + q(dir_ / "p.ripd"))
                .status,
            0);
  ASSERT_EQ(run("train --dataset " + q(dir_ / "p.ripd") + " --init " + q(dir_ / "m.ripm") +
                " --lambda 1.0 --iters 5 --out " + q(dir_ / "c.ripm"))
                .status,
            0);
  EXPECT_EQ(slurp(dir_ / "a.ripm"), slurp(dir_ / "c.ripm"));
}

TEST_F(Cli, EvalMatchesLibrary) {
  ASSERT_EQ(run("build-modes --block-size 8 --modes 13 --out " + q(dir_ / "m.ripm")).status, 0);
  const fs::path image = dir_ / "corpus" / "img1.pgm";
  ASSERT_EQ(run("eval-best --model " + q(dir_ / "m.ripm") + " --image " + q(image) + " --csv " +
                q(dir_ / "best.csv"))
                .status,
            0);
  ASSERT_EQ(run("eval-worst --model " + q(dir_ / "m.ripm") + " --image " + q(image) + " --csv " +
                q(dir_ / "worst.csv"))
                .status,
            0);
  const PredictorSet set = load_model(dir_ / "m.ripm");
  const Plane plane = decode_to_luminance(image);
  EXPECT_EQ(slurp(dir_ / "best.csv"), std::string(kCsvHeader) + "\n" +
                                          format_csv_row(best_case_evaluate(plane, set, "img1.pgm")) +
                                          "\n");
  EXPECT_EQ(slurp(dir_ / "worst.csv"),
            std::string(kCsvHeader) + "\n" +
                format_csv_row(worst_case_reconstruct(plane, set, "img1.pgm").report) + "\n");

  ASSERT_EQ(run("report --in " + q(dir_ / "best.csv") + " " + q(dir_ / "worst.csv") + " --out " +
                q(dir_ / "all.csv"))
                .status,
            0);
  const std::string merged = slurp(dir_ / "all.csv");
  EXPECT_EQ(std::count(merged.begin(), merged.end(), '\n'), 3);

  ASSERT_EQ(run("predict-image --model " + q(dir_ / "m.ripm") + " --image " + q(image) +
                " --protocol worst --out " + q(dir_ / "w.pgm"))
                .status,
            0);
  EXPECT_EQ(decode_to_luminance(dir_ / "w.pgm"),
            quantize(worst_case_reconstruct(plane, set).reconstruction));
}

TEST_F(Cli, FailuresNameTheStage) {
  std::ofstream(dir_ / "bad.ripm") << "not a model";
  const CliRun bad = run("eval-best --model " + q(dir_ / "bad.ripm") + " --image " +
                      q(dir_ / "corpus" / "img0.pgm"));
  EXPECT_NE(bad.status, 0);
  EXPECT_NE(bad.output.find("load model"), std::string::npos) << bad.output;

  ASSERT_EQ(run("build-modes --block-size 32 --modes 5 --out " + q(dir_ / "m32.ripm")).status, 0);
  const CliRun odd = run("eval-worst --model " + q(dir_ / "m32.ripm") + " --image " +
                      q(dir_ / "corpus" / "img0.pgm"));
  EXPECT_NE(odd.status, 0);
  EXPECT_NE(odd.output.find("evaluate"), std::string::npos) << odd.output;

  EXPECT_NE(run("build-modes --block-size 12 --out " + q(dir_ / "x.ripm")).status, 0);
  EXPECT_NE(run("build-modes --modes 6 --out " + q(dir_ / "x.ripm")).status, 0);
  EXPECT_NE(run("train --corpus " + q(dir_ / "corpus") + " --init " + q(dir_ / "m32.ripm") +
                " --iters 0 --out " + q(dir_ / "x.ripm"))
                .status,
            0);
  EXPECT_FALSE(fs::exists(dir_ / "x.ripm"));
}

}  // namespace
}  // namespace rip
