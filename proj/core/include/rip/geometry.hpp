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

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

namespace rip {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Mid-gray fill used when no reference sample is available at all.
inline constexpr double kMidGray = 128.0;

// Number of bounding samples feeding an N x N block: corner, N top, N
// top-right, N left. Throws InvalidArgument for block_size < 1.
int reference_length(int block_size);

// Layout of one square block and its reference samples.
//
// Reference ordering (index: image position relative to block origin r, c):
//   0             (r-1, c-1)        corner
//   1 .. N        (r-1, c+k)        top row
//   N+1 .. 2N     (r-1, c+N+k)      top-right extension
//   2N+1 .. 3N    (r+k, c-1)        left column
class BlockGeometry {
 public:
  explicit BlockGeometry(int block_size);

  int block_size() const { return block_size_; }
  int ref_len() const { return 3 * block_size_ + 1; }
  int block_len() const { return block_size_ * block_size_; }

  int corner_index() const { return 0; }
  int top_index(int col) const { return 1 + col; }
  int top_right_index(int k) const { return 1 + block_size_ + k; }
  int left_index(int row) const { return 2 * block_size_ + 1 + row; }

  // Image offset (drow, dcol) of reference sample `index` relative to the
  // block's top-left pixel.
  struct Offset {
    int drow;
    int dcol;
  };
  Offset reference_offset(int index) const;

  friend bool operator==(const BlockGeometry&, const BlockGeometry&) = default;

 private:
  int block_size_;
};

// True for the block sizes the experiments and the CLI accept: 4, 8, 16, 32.
bool is_supported_block_size(int block_size);

// Row-major luminance plane with real-valued samples.
class Plane {
 public:
  Plane() = default;
  Plane(int width, int height, double fill = 0.0);

  int width() const { return width_; }
  int height() const { return height_; }
  bool contains(int row, int col) const {
    return row >= 0 && col >= 0 && row < height_ && col < width_;
  }

  double operator()(int row, int col) const { return pixels_[index(row, col)]; }
  double& operator()(int row, int col) { return pixels_[index(row, col)]; }

  const std::vector<double>& pixels() const { return pixels_; }
  std::vector<double>& pixels() { return pixels_; }

  friend bool operator==(const Plane&, const Plane&) = default;

 private:
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(col);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> pixels_;
};

// Per-pixel availability of already reconstructed samples.
class AvailabilityMask {
 public:
  AvailabilityMask(int width, int height, bool available = false);

  int width() const { return width_; }
  int height() const { return height_; }
  bool available(int row, int col) const;
  void mark_block(int row, int col, int size);

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> bits_;
};

// The 3N+1 bounding samples of a block.
struct ReferenceVector {
  Vector values;
};

// The N*N pixels of a block, row-major.
struct TargetBlock {
  Vector values;
};

// Gathers the reference samples of the block whose top-left pixel is
// (row, col). Samples outside the image are unavailable; with a mask, samples
// the mask marks unavailable are too. Unavailable samples take the value of
// the nearest preceding available sample in reference order; leading
// unavailable samples take the first available one; with nothing available,
// every entry is kMidGray.
ReferenceVector extract_reference(const Plane& plane, int row, int col,
                                  const BlockGeometry& geometry);
ReferenceVector extract_reference(const Plane& plane, int row, int col,
                                  const BlockGeometry& geometry,
                                  const AvailabilityMask& mask);

TargetBlock extract_block(const Plane& plane, int row, int col,
                          const BlockGeometry& geometry);

// Where a dataset column came from.
struct PatchSource {
  std::string image_id;
  int row = 0;
  int col = 0;

  friend bool operator==(const PatchSource&, const PatchSource&) = default;
};

// Paired training samples: column s of `references` and column s of
// `targets` were extracted at sources[s].
struct PatchDataset {
  explicit PatchDataset(const BlockGeometry& g)
      : geometry(g), references(g.ref_len(), 0), targets(g.block_len(), 0) {}

  BlockGeometry geometry;
  Matrix references;  // ref_len x S
  Matrix targets;     // block_len x S
  std::vector<PatchSource> sources;

  Eigen::Index count() const { return references.cols(); }

  // Appends the columns of `other`; geometries must match.
  void append(const PatchDataset& other);
};

// Top-left positions whose references all lie inside the image:
// 1 <= row <= height-N and 1 <= col <= width-2N.
struct ValidPositionRange {
  int row_begin, row_end;  // half-open
  int col_begin, col_end;

  long long count() const {
    return static_cast<long long>(row_end - row_begin) * (col_end - col_begin);
  }
};
ValidPositionRange valid_patch_positions(int width, int height,
                                         const BlockGeometry& geometry);

// Draws `count` positions uniformly with replacement from the valid position
// set. Deterministic in (plane, geometry, count, seed).
PatchDataset sample_patches(const Plane& plane, const BlockGeometry& geometry,
                            int count, std::uint64_t seed,
                            const std::string& image_id = {});

}  // namespace rip
