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

#include <cstdint>
#include <filesystem>
#include <string>

#include "rip/designed.hpp"

namespace rip {

// Binary model file, little-endian:
//   "RIPM" | version u32 (=1) | block_size u32 | ref_len u32 | block_len u32
//   | k u32 | provenance u8 | lambda f64 | iterations_trained u32
//   | k x { label_len u16 | label bytes (UTF-8) | block_len*ref_len f64, row-major }
inline constexpr std::uint32_t kModelFormatVersion = 1;

std::string serialize_model(const PredictorSet& set);
PredictorSet deserialize_model(const std::string& bytes);

// Throws ModelFormatError(kIo) when the file cannot be written or read.
void save_model(const PredictorSet& set, const std::filesystem::path& path);
PredictorSet load_model(const std::filesystem::path& path);

// Training patch file, little-endian:
//   "RIPD" | version u32 (=1) | block_size u32 | count u64
//   | count x { id_len u16 | image id | row u32 | col u32
//              | ref_len f64 references | block_len f64 targets }
// Malformed files raise ModelFormatError with the same kinds as models.
std::string serialize_dataset(const PatchDataset& dataset);
PatchDataset deserialize_dataset(const std::string& bytes);
void save_dataset(const PatchDataset& dataset, const std::filesystem::path& path);
PatchDataset load_dataset(const std::filesystem::path& path);

}  // namespace rip
