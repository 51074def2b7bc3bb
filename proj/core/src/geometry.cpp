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

#include "rip/geometry.hpp"

#include <random>
#include <string>

#include "rip/error.hpp"

namespace rip {

int reference_length(int block_size) {
  if (block_size < 1) {
    throw InvalidArgument("block size must be >= 1, got " + std::to_string(block_size));
  }
  return 3 * block_size + 1;
}

BlockGeometry::BlockGeometry(int block_size) : block_size_(block_size) {
  reference_length(block_size);
}

BlockGeometry::Offset BlockGeometry::reference_offset(int index) const {
  const int n = block_size_;
  if (index < 0 || index > 3 * n) {
    throw InvalidArgument("reference index out of range: " + std::to_string(index));
  }
  if (index == 0) return {-1, -1};
  if (index <= 2 * n) return {-1, index - 1};
  return {index - (2 * n + 1), -1};
}

bool is_supported_block_size(int block_size) {
  return block_size == 4 || block_size == 8 || block_size == 16 || block_size == 32;
}

Plane::Plane(int width, int height, double fill) : width_(width), height_(height) {
  if (width < 0 || height < 0) throw InvalidArgument("negative plane dimensions");
  pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

AvailabilityMask::AvailabilityMask(int width, int height, bool available)
    : width_(width),
      height_(height),
      bits_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
            available ? 1 : 0) {}

bool AvailabilityMask::available(int row, int col) const {
  if (row < 0 || col < 0 || row >= height_ || col >= width_) return false;
  return bits_[static_cast<std::size_t>(row) * width_ + col] != 0;
}

void AvailabilityMask::mark_block(int row, int col, int size) {
  for (int r = row; r < row + size && r < height_; ++r) {
    for (int c = col; c < col + size && c < width_; ++c) {
      bits_[static_cast<std::size_t>(r) * width_ + c] = 1;
    }
  }
}

namespace {

void check_block_inside(const Plane& plane, int row, int col, const BlockGeometry& g) {
  const int n = g.block_size();
  if (row < 0 || col < 0 || row + n > plane.height() || col + n > plane.width()) {
    throw InvalidArgument("block at (" + std::to_string(row) + ", " + std::to_string(col) +
                          ") of size " + std::to_string(n) + " extends past a " +
                          std::to_string(plane.width()) + "x" +
                          std::to_string(plane.height()) + " image");
  }
}

template <typename IsAvailable>
ReferenceVector gather_reference(const Plane& plane, int row, int col,
                                 const BlockGeometry& g, IsAvailable&& is_available) {
  check_block_inside(plane, row, col, g);
  const int len = g.ref_len();
  ReferenceVector ref{Vector(len)};
  std::vector<bool> present(static_cast<std::size_t>(len));
  int first_available = -1;
  for (int k = 0; k < len; ++k) {
    const auto [dr, dc] = g.reference_offset(k);
    const int r = row + dr;
    const int c = col + dc;
    present[k] = plane.contains(r, c) && is_available(r, c);
    if (present[k]) {
      ref.values[k] = plane(r, c);
      if (first_available < 0) first_available = k;
    }
  }
  if (first_available < 0) {
    ref.values.setConstant(kMidGray);
    return ref;
  }
  double last = ref.values[first_available];
  for (int k = 0; k < len; ++k) {
    if (present[k]) {
      last = ref.values[k];
    } else {
      ref.values[k] = last;
    }
  }
  return ref;
}

}  // namespace

ReferenceVector extract_reference(const Plane& plane, int row, int col,
                                  const BlockGeometry& geometry) {
  return gather_reference(plane, row, col, geometry, [](int, int) { return true; });
}

ReferenceVector extract_reference(const Plane& plane, int row, int col,
                                  const BlockGeometry& geometry,
                                  const AvailabilityMask& mask) {
  if (mask.width() != plane.width() || mask.height() != plane.height()) {
    throw InvalidArgument("availability mask does not match plane dimensions");
  }
  return gather_reference(plane, row, col, geometry,
                          [&mask](int r, int c) { return mask.available(r, c); });
}

TargetBlock extract_block(const Plane& plane, int row, int col,
                          const BlockGeometry& geometry) {
  check_block_inside(plane, row, col, geometry);
  const int n = geometry.block_size();
  TargetBlock block{Vector(geometry.block_len())};
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) block.values[j * n + i] = plane(row + j, col + i);
  }
  return block;
}

void PatchDataset::append(const PatchDataset& other) {
  if (!(other.geometry == geometry)) {
    throw InvalidArgument("cannot append datasets with different block sizes");
  }
  const Eigen::Index old = count();
  references.conservativeResize(Eigen::NoChange, old + other.count());
  targets.conservativeResize(Eigen::NoChange, old + other.count());
  references.rightCols(other.count()) = other.references;
  targets.rightCols(other.count()) = other.targets;
  sources.insert(sources.end(), other.sources.begin(), other.sources.end());
}

ValidPositionRange valid_patch_positions(int width, int height,
                                         const BlockGeometry& geometry) {
  const int n = geometry.block_size();
  ValidPositionRange range{1, height - n + 1, 1, width - 2 * n + 1};
  if (range.row_end <= range.row_begin || range.col_end <= range.col_begin) {
    range.row_end = range.row_begin;
    range.col_end = range.col_begin;
  }
  return range;
}

PatchDataset sample_patches(const Plane& plane, const BlockGeometry& geometry,
                            int count, std::uint64_t seed, const std::string& image_id) {
  if (count < 0) throw InvalidArgument("patch count must be non-negative");
  PatchDataset dataset(geometry);
  if (count == 0) return dataset;

  const ValidPositionRange range =
      valid_patch_positions(plane.width(), plane.height(), geometry);
  if (range.count() == 0) {
    throw InvalidArgument("image " + std::to_string(plane.width()) + "x" +
                          std::to_string(plane.height()) +
                          " has no position with fully in-image references for N=" +
                          std::to_string(geometry.block_size()));
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_row(range.row_begin, range.row_end - 1);
  std::uniform_int_distribution<int> pick_col(range.col_begin, range.col_end - 1);

  dataset.references.resize(geometry.ref_len(), count);
  dataset.targets.resize(geometry.block_len(), count);
  dataset.sources.reserve(static_cast<std::size_t>(count));
  for (int s = 0; s < count; ++s) {
    const int row = pick_row(rng);
    const int col = pick_col(rng);
    dataset.references.col(s) = extract_reference(plane, row, col, geometry).values;
    dataset.targets.col(s) = extract_block(plane, row, col, geometry).values;
    dataset.sources.push_back({image_id, row, col});
  }
  return dataset;
}

}  // namespace rip
