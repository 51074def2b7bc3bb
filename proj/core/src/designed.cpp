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

#include "rip/designed.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "rip/error.hpp"

namespace rip {

std::string_view to_string(Provenance provenance) {
  switch (provenance) {
    case Provenance::kDesignedUniform:
      return "designed-uniform";
    case Provenance::kDesignedHevc:
      return "designed-hevc";
    case Provenance::kRipTrained:
      return "rip-trained";
  }
  return "unknown";
}

PredictorSet::PredictorSet(BlockGeometry geometry, std::vector<PredictorMatrix> modes,
                           Provenance provenance, double lambda, int iterations_trained)
    : geometry_(geometry),
      modes_(std::move(modes)),
      provenance_(provenance),
      lambda_(lambda),
      iterations_trained_(iterations_trained) {
  if (!(lambda >= 0.0)) throw InvalidArgument("lambda must be >= 0");
  if (iterations_trained < 0) throw InvalidArgument("iterations_trained must be >= 0");
  for (std::size_t p = 0; p < modes_.size(); ++p) {
    const Matrix& w = modes_[p].weights;
    if (w.rows() != geometry_.block_len() || w.cols() != geometry_.ref_len()) {
      throw InvalidArgument("mode " + std::to_string(p) + " is " + std::to_string(w.rows()) +
                            "x" + std::to_string(w.cols()) + ", expected " +
                            std::to_string(geometry_.block_len()) + "x" +
                            std::to_string(geometry_.ref_len()));
    }
    modes_[p].mode_id = static_cast<int>(p);
  }
}

namespace {

constexpr double kSnap = 1e-9;

std::string format_degrees(double theta) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", theta);
  return buf;
}

double degrees_of(Direction d) {
  double deg = std::atan2(d.dy, d.dx) * 180.0 / std::numbers::pi;
  if (deg < 0.0) deg += 360.0;
  return deg;
}

// Splits a fractional sample coordinate into (floor, weight of the next
// sample), snapping weights within kSnap of 0 or 1.
std::pair<int, double> split_position(double pos) {
  double base = std::floor(pos);
  double w = pos - base;
  if (w < kSnap) {
    w = 0.0;
  } else if (w > 1.0 - kSnap) {
    base += 1.0;
    w = 0.0;
  }
  return {static_cast<int>(base), w};
}

}  // namespace

Direction direction_from_degrees(double theta) {
  // Exact unit steps for the orientations every uniform set must contain.
  static constexpr std::array<std::pair<double, Direction>, 5> kExact = {{
      {45.0, {1.0, 1.0}},
      {90.0, {0.0, 1.0}},
      {135.0, {-1.0, 1.0}},
      {180.0, {-1.0, 0.0}},
      {225.0, {-1.0, -1.0}},
  }};
  for (const auto& [deg, dir] : kExact) {
    if (theta == deg) return dir;
  }
  const double rad = theta * std::numbers::pi / 180.0;
  return {std::cos(rad), std::sin(rad)};
}

PredictorMatrix build_directional_matrix(const BlockGeometry& geometry, Direction direction) {
  const double deg = degrees_of(direction);
  if (!(deg >= 45.0 - 1e-9 && deg <= 225.0 + 1e-9) ||
      (direction.dx == 0.0 && direction.dy == 0.0)) {
    throw InvalidArgument("direction " + format_degrees(deg) + " deg is outside [45, 225]");
  }
  const int n = geometry.block_size();
  PredictorMatrix out;
  out.label = "angular " + format_degrees(deg) + " deg";
  out.weights = Matrix::Zero(geometry.block_len(), geometry.ref_len());

  // Reference sample index for a column on the top line (-1 is the corner)
  // and for a row on the left line.
  auto top_sample = [&](int col) { return col < 0 ? 0 : 1 + col; };
  auto left_sample = [&](int row) { return row < 0 ? 0 : 2 * n + 1 + row; };

  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      auto row_weights = out.weights.row(j * n + i);

      const bool reaches_top = direction.dy > 0.0;
      const bool reaches_left = direction.dx < 0.0;
      const double t_top = reaches_top ? (j + 1) / direction.dy : INFINITY;
      const double t_left = reaches_left ? (i + 1) / -direction.dx : INFINITY;

      if (t_top <= t_left) {
        const double pos = std::max(-1.0, i + t_top * direction.dx);
        auto [c0, w] = split_position(pos);
        if (c0 >= 2 * n - 1) {
          row_weights[top_sample(2 * n - 1)] = 1.0;
        } else {
          row_weights[top_sample(c0)] += 1.0 - w;
          if (w > 0.0) row_weights[top_sample(c0 + 1)] += w;
        }
      } else {
        const double pos = std::max(-1.0, j - t_left * direction.dy);
        auto [r0, w] = split_position(pos);
        if (r0 >= n - 1) {
          row_weights[left_sample(n - 1)] = 1.0;
        } else {
          row_weights[left_sample(r0)] += 1.0 - w;
          if (w > 0.0) row_weights[left_sample(r0 + 1)] += w;
        }
      }
    }
  }
  return out;
}

PredictorMatrix build_angular_matrix(const BlockGeometry& geometry, double theta) {
  if (!(theta >= 45.0 && theta <= 225.0)) {
    throw InvalidArgument("angle " + format_degrees(theta) + " deg is outside [45, 225]");
  }
  PredictorMatrix m = build_directional_matrix(geometry, direction_from_degrees(theta));
  m.label = "angular " + format_degrees(theta) + " deg";
  return m;
}

bool is_uniform_mode_count(int mode_count) {
  for (int c : kUniformModeCounts) {
    if (c == mode_count) return true;
  }
  return false;
}

std::vector<double> uniform_angles(int mode_count) {
  if (!is_uniform_mode_count(mode_count)) {
    throw InvalidArgument("unsupported uniform mode count " + std::to_string(mode_count) +
                          " (expected 5, 9, ..., 33)");
  }
  std::vector<double> angles;
  angles.reserve(static_cast<std::size_t>(mode_count));
  const double step = 180.0 / (mode_count - 1);
  for (int p = 0; p < mode_count; ++p) angles.push_back(45.0 + p * step);
  return angles;
}

PredictorSet build_uniform_angular_set(const BlockGeometry& geometry, int mode_count) {
  std::vector<PredictorMatrix> modes;
  for (double theta : uniform_angles(mode_count)) {
    modes.push_back(build_angular_matrix(geometry, theta));
  }
  return PredictorSet(geometry, std::move(modes), Provenance::kDesignedUniform);
}

PredictorMatrix build_dc_matrix(const BlockGeometry& geometry, DcStyle style) {
  const int n = geometry.block_size();
  PredictorMatrix out;
  if (style == DcStyle::kFullAverage) {
    out.label = "dc";
    out.weights = Matrix::Constant(geometry.block_len(), geometry.ref_len(),
                                   1.0 / geometry.ref_len());
    return out;
  }
  out.label = "dc (hevc)";
  out.weights = Matrix::Zero(geometry.block_len(), geometry.ref_len());
  const double w = 1.0 / (2 * n);
  for (int k = 0; k < n; ++k) {
    out.weights.col(geometry.top_index(k)).setConstant(w);
    out.weights.col(geometry.left_index(k)).setConstant(w);
  }
  return out;
}

PredictorMatrix build_planar_matrix(const BlockGeometry& geometry) {
  const int n = geometry.block_size();
  PredictorMatrix out;
  out.label = "planar";
  out.weights = Matrix::Zero(geometry.block_len(), geometry.ref_len());
  const int top_right = geometry.top_right_index(0);
  const int below_left = geometry.left_index(n - 1);
  const double scale = 1.0 / (2 * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      auto row = out.weights.row(j * n + i);
      row[geometry.left_index(j)] += (n - 1 - i) * scale;
      row[top_right] += (i + 1) * scale;
      row[geometry.top_index(i)] += (n - 1 - j) * scale;
      row[below_left] += (j + 1) * scale;
    }
  }
  return out;
}

int hevc_intra_pred_angle(int hevc_mode) {
  static constexpr std::array<int, 33> kAngles = {
      32,  26,  21,  17,  13,  9,  5,  2,  0,  -2, -5, -9, -13, -17, -21, -26, -32,
      -26, -21, -17, -13, -9, -5, -2, 0,  2,  5,  9,  13,  17,  21,  26,  32};
  if (hevc_mode < 2 || hevc_mode > 34) {
    throw InvalidArgument("HEVC angular modes are 2..34, got " + std::to_string(hevc_mode));
  }
  return kAngles[static_cast<std::size_t>(hevc_mode - 2)];
}

Direction hevc_mode_direction(int hevc_mode) {
  const double slope = hevc_intra_pred_angle(hevc_mode) / 32.0;
  // Modes 2..17 project onto the left column, 18..34 onto the top row.
  if (hevc_mode < 18) return {-1.0, -slope};
  return {slope, 1.0};
}

PredictorSet build_hevc_set(const BlockGeometry& geometry) {
  std::vector<PredictorMatrix> modes;
  modes.reserve(35);
  modes.push_back(build_planar_matrix(geometry));
  modes.push_back(build_dc_matrix(geometry, DcStyle::kHevc));
  for (int m = 2; m <= 34; ++m) {
    PredictorMatrix angular = build_directional_matrix(geometry, hevc_mode_direction(m));
    angular.label = "hevc " + std::to_string(m) + " (" + angular.label + ")";
    modes.push_back(std::move(angular));
  }
  return PredictorSet(geometry, std::move(modes), Provenance::kDesignedHevc);
}

}  // namespace rip
