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

#include <string>
#include <string_view>
#include <vector>

#include "rip/geometry.hpp"

namespace rip {

// One linear prediction mode: block_len x ref_len weights mapping a
// reference vector to a block estimate.
struct PredictorMatrix {
  int mode_id = 0;
  std::string label;
  Matrix weights;
};

enum class Provenance : std::uint8_t {
  kDesignedUniform = 0,
  kDesignedHevc = 1,
  kRipTrained = 2,
};

std::string_view to_string(Provenance provenance);

// Ordered collection of modes sharing one geometry. Immutable once built;
// the constructor checks shapes and renumbers mode ids to 0..k-1.
class PredictorSet {
 public:
  PredictorSet(BlockGeometry geometry, std::vector<PredictorMatrix> modes,
               Provenance provenance, double lambda = 0.0, int iterations_trained = 0);

  const BlockGeometry& geometry() const { return geometry_; }
  const std::vector<PredictorMatrix>& modes() const { return modes_; }
  const PredictorMatrix& mode(int p) const { return modes_.at(static_cast<std::size_t>(p)); }
  int size() const { return static_cast<int>(modes_.size()); }
  Provenance provenance() const { return provenance_; }
  double lambda() const { return lambda_; }
  int iterations_trained() const { return iterations_trained_; }

 private:
  BlockGeometry geometry_;
  std::vector<PredictorMatrix> modes_;
  Provenance provenance_;
  double lambda_;
  int iterations_trained_;
};

// Propagation direction from a block pixel toward the reference border, in
// image axes with x to the right and y up. Need not be normalized.
struct Direction {
  double dx;
  double dy;
};

// Direction for an angle in degrees (90 = up, 180 = left, 45 = up-right,
// 225 = down-left). Multiples of 45 degrees are exact.
Direction direction_from_degrees(double theta);

// Two-tap interpolation along `direction`: each pixel traces a ray to the
// reference border and takes a convex combination of the two samples around
// the crossing. Crossings past the last top-right or left sample clamp to it.
// The direction must point into the closed sector [45, 225] degrees.
PredictorMatrix build_directional_matrix(const BlockGeometry& geometry, Direction direction);

// theta in [45, 225] degrees.
PredictorMatrix build_angular_matrix(const BlockGeometry& geometry, double theta);

inline constexpr int kUniformModeCounts[] = {5, 9, 13, 17, 21, 25, 29, 33};
bool is_uniform_mode_count(int mode_count);

// mode_count angles spread evenly over [45, 225], both ends included.
std::vector<double> uniform_angles(int mode_count);
PredictorSet build_uniform_angular_set(const BlockGeometry& geometry, int mode_count);

enum class DcStyle {
  kFullAverage,  // mean of all 3N+1 references
  kHevc,          // mean of the N top and N left samples
};

PredictorMatrix build_dc_matrix(const BlockGeometry& geometry, DcStyle style);

// HEVC planar as real weights. The below-left sample is not part of the
// layout and is replaced by the bottom-most left sample.
PredictorMatrix build_planar_matrix(const BlockGeometry& geometry);

// intraPredAngle (in 1/32 sample units) of HEVC angular mode 2..34.
int hevc_intra_pred_angle(int hevc_mode);
Direction hevc_mode_direction(int hevc_mode);

// [planar, dc (HEVC style), angular modes 2..34], 35 modes.
PredictorSet build_hevc_set(const BlockGeometry& geometry);

}  // namespace rip
