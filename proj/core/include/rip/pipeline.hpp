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
#include <string_view>
#include <vector>

#include "rip/designed.hpp"
#include "rip/geometry.hpp"

namespace rip {

struct CorpusImage {
  std::string id;  // file name without directory
  Plane plane;
};

// Decodes every PNG/PGM in `dir`, sorted by file name.
std::vector<CorpusImage> load_corpus(const std::filesystem::path& dir);
CorpusImage load_image(const std::filesystem::path& path);

// Seed for the image at `index` of a corpus sampled under `seed`.
std::uint64_t image_seed(std::uint64_t seed, std::size_t index);

// Samples `per_image` patches from each image (seeded by image_seed) and
// concatenates them in corpus order.
PatchDataset collect_patches(const std::vector<CorpusImage>& corpus, const BlockGeometry& g,
                             int per_image, std::uint64_t seed);

// "hevc" or a uniform angular mode count such as "33".
PredictorSet designed_set(int block_size, std::string_view modes);

}  // namespace rip
