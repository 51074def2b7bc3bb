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

#include <cmath>
#include <cstdio>
#include <fstream>

#include "rip/error.hpp"

namespace rip {

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

std::string format_csv_row(const EvaluationReport& report) {
  std::string histogram;
  for (std::size_t p = 0; p < report.mode_histogram.size(); ++p) {
    if (p > 0) histogram += ';';
    histogram += std::to_string(report.mode_histogram[p]);
  }
  std::string id = report.image_id;
  for (char& ch : id) {
    if (ch == ',' || ch == '\n') ch = '_';
  }
  return id + "," + std::to_string(report.geometry.block_size()) + "," +
         std::to_string(report.mode_count) + "," + std::string(to_string(report.provenance)) +
         "," + std::string(to_string(report.protocol)) + "," + format_number(report.mse) + "," +
         format_number(report.psnr_db) + "," + std::to_string(report.blocks.size()) + "," +
         histogram;
}

void append_csv(const std::filesystem::path& path, const std::vector<EvaluationReport>& reports) {
  std::error_code ec;
  const bool needs_header =
      !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw Error("cannot open " + path.string() + " for appending");
  if (needs_header) out << kCsvHeader << '\n';
  for (const auto& report : reports) out << format_csv_row(report) << '\n';
  out.close();
  if (!out) throw Error("write failed: " + path.string());
}

void merge_csv(const std::vector<std::filesystem::path>& inputs,
               const std::filesystem::path& output) {
  std::string merged = std::string(kCsvHeader) + "\n";
  for (const auto& input : inputs) {
    std::ifstream in(input, std::ios::binary);
    if (!in) throw Error("cannot open " + input.string());
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (first) {
        first = false;
        if (line != kCsvHeader) {
          throw Error(input.string() + ": unexpected CSV header '" + line + "'");
        }
        continue;
      }
      if (!line.empty()) merged += line + "\n";
    }
  }
  std::ofstream out(output, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + output.string() + " for writing");
  out << merged;
  out.close();
  if (!out) throw Error("write failed: " + output.string());
}

}  // namespace rip
