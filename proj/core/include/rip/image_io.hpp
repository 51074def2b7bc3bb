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

#include "rip/geometry.hpp"

namespace rip {

// BT.601 luma, rounded half up: 0.299 R + 0.587 G + 0.114 B.
double rgb_to_luma(double red, double green, double blue);

// Reads an 8-bit PGM (P5) or PNG. Gray images pass through unchanged; color
// images are converted with rgb_to_luma; alpha is ignored. Throws
// ImageFormatError for malformed files and bit depths other than 8.
Plane decode_to_luminance(const std::filesystem::path& path);
Plane decode_pgm(const std::string& bytes);

// Writes an 8-bit binary PGM of quantize(plane).
void write_pgm(const Plane& plane, const std::filesystem::path& path);
std::string encode_pgm(const Plane& plane);

// *.png and *.pgm files directly inside `dir`, sorted by file name.
std::vector<std::filesystem::path> list_images(const std::filesystem::path& dir);

}  // namespace rip
