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

#include "rip/csv_report.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rip/error.hpp"

namespace rip {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

EvaluationReport sample_report(const std::string& id, double mse) {
  EvaluationReport r;
  r.image_id = id;
  r.geometry = BlockGeometry(8);
  r.protocol = Protocol::kWorstCase;
  r.provenance = Provenance::kRipTrained;
  r.mode_count = 3;
  r.mode_histogram = {4, 0, 2};
  r.blocks.resize(6);
  r.mse = mse;
  r.psnr_db = psnr_from_mse(mse);
  return r;
}

TEST(CsvReport, NumberFormatting) {
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(48.130803608679), "48.1308");
  EXPECT_EQ(format_number(0.000123456789), "0.000123457");
  EXPECT_EQ(format_number(INFINITY), "inf");
}

TEST(CsvReport, RowLayout) {
  EXPECT_EQ(format_csv_row(sample_report("lena", 1.0)),
            "lena,8,3,rip-trained,worst,1,48.1308,6,4;0;2");
  EXPECT_EQ(format_csv_row(sample_report("a,b", 0.0)),
            "a_b,8,3,rip-trained,worst,0,inf,6,4;0;2");
}

TEST(CsvReport, AppendWritesHeaderOnce) {
  const fs::path path = fs::temp_directory_path() / "rip_csv_append.csv";
  fs::remove(path);
  append_csv(path, {sample_report("x", 2.0)});
  append_csv(path, {sample_report("y", 3.0), sample_report("z", 4.0)});
  const std::string text = slurp(path);
  EXPECT_EQ(text.find(kCsvHeader), 0u);
  EXPECT_EQ(text.find(kCsvHeader, 1), std::string::npos);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
  fs::remove(path);
}

TEST(CsvReport, MergeConcatenatesRows) {
  const fs::path dir = fs::temp_directory_path();
  const fs::path a = dir / "rip_csv_a.csv", b = dir / "rip_csv_b.csv", out = dir / "rip_csv_m.csv";
  fs::remove(a);
  fs::remove(b);
  append_csv(a, {sample_report("x", 2.0)});
  append_csv(b, {sample_report("y", 3.0)});
  merge_csv({a, b}, out);
  EXPECT_EQ(slurp(out), std::string(kCsvHeader) + "\n" +
                            format_csv_row(sample_report("x", 2.0)) + "\n" +
                            format_csv_row(sample_report("y", 3.0)) + "\n");
  std::ofstream(b, std::ios::binary) << "wrong,header\n";
  EXPECT_THROW(merge_csv({a, b}, out), Error);
  EXPECT_THROW(merge_csv({dir / "rip_csv_missing.csv"}, out), Error);
}

}  // namespace
}  // namespace rip
