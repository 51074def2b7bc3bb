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

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "rip/engine.hpp"

namespace rip {

inline constexpr const char* kCsvHeader =
    "image,block_size,mode_count,provenance,protocol,mse,psnr_db,blocks,mode_histogram";

// Six significant digits; infinite PSNR is written as "inf".
std::string format_number(double value);

// One CSV line (no trailing newline) for `report`.
std::string format_csv_row(const EvaluationReport& report);

// Appends rows to `path`, writing the header first when the file is missing
// or empty.
void append_csv(const std::filesystem::path& path, const std::vector<EvaluationReport>& reports);

// Concatenates the data rows of `inputs` under a single header.
void merge_csv(const std::vector<std::filesystem::path>& inputs,
               const std::filesystem::path& output);

}  // namespace rip
