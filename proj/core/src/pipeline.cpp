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

#include "rip/pipeline.hpp"

#include <charconv>

#include "rip/error.hpp"
#include "rip/image_io.hpp"
#include "rip/parallel.hpp"

namespace rip {

CorpusImage load_image(const std::filesystem::path& path) {
  return {path.filename().string(), decode_to_luminance(path)};
}

std::vector<CorpusImage> load_corpus(const std::filesystem::path& dir) {
  const std::vector<std::filesystem::path> files = list_images(dir);
  if (files.empty()) throw InvalidArgument("no PNG or PGM images in " + dir.string());
  std::vector<CorpusImage> corpus(files.size());
  parallel_for(files.size(), [&](std::size_t i) { corpus[i] = load_image(files[i]); });
  return corpus;
}

std::uint64_t image_seed(std::uint64_t seed, std::size_t index) {
  // splitmix64 finalizer over the combined value.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(index) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

PatchDataset collect_patches(const std::vector<CorpusImage>& corpus, const BlockGeometry& g,
                             int per_image, std::uint64_t seed) {
  if (per_image < 0) throw InvalidArgument("patch count must be non-negative");
  std::vector<PatchDataset> parts(corpus.size(), PatchDataset(g));
  parallel_for(corpus.size(), [&](std::size_t i) {
    parts[i] = sample_patches(corpus[i].plane, g, per_image, image_seed(seed, i), corpus[i].id);
  });
  PatchDataset all(g);
  const Eigen::Index total = static_cast<Eigen::Index>(per_image) *
                             static_cast<Eigen::Index>(corpus.size());
  all.references.resize(g.ref_len(), total);
  all.targets.resize(g.block_len(), total);
  all.sources.reserve(static_cast<std::size_t>(total));
  Eigen::Index at = 0;
  for (const PatchDataset& part : parts) {
    all.references.middleCols(at, part.count()) = part.references;
    all.targets.middleCols(at, part.count()) = part.targets;
    all.sources.insert(all.sources.end(), part.sources.begin(), part.sources.end());
    at += part.count();
  }
  return all;
}

PredictorSet designed_set(int block_size, std::string_view modes) {
  if (!is_supported_block_size(block_size)) {
    throw InvalidArgument("block size must be one of 4, 8, 16, 32; got " +
                          std::to_string(block_size));
  }
  const BlockGeometry g(block_size);
  if (modes == "hevc") return build_hevc_set(g);
  int count = 0;
  const auto [end, ec] = std::from_chars(modes.data(), modes.data() + modes.size(), count);
  if (ec != std::errc() || end != modes.data() + modes.size() || !is_uniform_mode_count(count)) {
    throw InvalidArgument("modes must be hevc or one of 5, 9, 13, ..., 33; got '" +
                          std::string(modes) + "'");
  }
  return build_uniform_angular_set(g, count);
}

}  // namespace rip
