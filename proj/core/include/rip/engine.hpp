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

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "rip/designed.hpp"
#include "rip/geometry.hpp"

namespace rip {

// All k modes concatenated vertically: rows [p*n, (p+1)*n) hold mode p.
struct StackedPredictor {
  BlockGeometry geometry;
  Matrix weights;  // (k * block_len) x ref_len
  int k = 0;

  // Multiply-accumulates for one predict_all call: k * block_len * ref_len.
  long long multiply_accumulates() const {
    return static_cast<long long>(weights.rows()) * weights.cols();
  }
};

StackedPredictor stack(const PredictorSet& set);

// y_hat = M x, unclamped.
TargetBlock predict(const PredictorMatrix& mode, const ReferenceVector& x);

// One (k n) x m product, sliced into the k block estimates.
std::vector<TargetBlock> predict_all(const StackedPredictor& stacked, const ReferenceVector& x);

struct ModeChoice {
  int mode = 0;
  TargetBlock estimate;
  double error = 0.0;  // ||y - y_hat||_2
};

// argmin_p ||y - M_p x||_2, lowest index on ties.
ModeChoice select_mode(const PredictorSet& set, const ReferenceVector& x, const TargetBlock& y);
ModeChoice select_mode(const StackedPredictor& stacked, const ReferenceVector& x,
                       const TargetBlock& y);

inline constexpr double kPeak = 255.0;

// 10 log10(255^2 / mse); +infinity when mse == 0.
double psnr_from_mse(double mse);
bool is_infinite_psnr(double psnr_db);
double mean_squared_error(std::span<const double> a, std::span<const double> b);
double psnr(std::span<const double> a, std::span<const double> b);
double psnr(const Plane& a, const Plane& b);

enum class Protocol { kBestCase, kWorstCase };
std::string_view to_string(Protocol protocol);

struct BlockRecord {
  int row = 0;
  int col = 0;
  int mode = 0;
  double squared_error = 0.0;
};

struct EvaluationReport {
  std::string image_id;
  BlockGeometry geometry{8};
  Protocol protocol = Protocol::kBestCase;
  Provenance provenance = Provenance::kDesignedUniform;
  int mode_count = 0;
  std::vector<long long> mode_histogram;  // predicted blocks per mode
  std::vector<BlockRecord> blocks;        // predicted blocks, raster order
  double mse = 0.0;
  double psnr_db = 0.0;
};

// Predicts every full N x N block on the grid (aN, bN) from references taken
// from the original image (edge references substituted) and scores each with
// its best mode. MSE covers all predicted pixels. Pixels past the last full
// block row or column are not scored.
EvaluationReport best_case_evaluate(const Plane& plane, const PredictorSet& set,
                                    const std::string& image_id = {});

// Image of the best-case estimates chosen in `report`; pixels outside the
// predicted grid keep their original values.
Plane best_case_prediction(const Plane& plane, const PredictorSet& set,
                           const EvaluationReport& report);

struct WorstCaseResult {
  Plane reconstruction;  // real-valued, unclamped
  EvaluationReport report;
};

// Rebuilds the image from its top-left block alone: blocks are visited in
// raster order, each predicted from the reconstruction so far with the mode
// that best matches the original block, and no residual is added. Report MSE
// and PSNR compare quantize(reconstruction) with the original. Dimensions
// must be multiples of N.
WorstCaseResult worst_case_reconstruct(const Plane& plane, const PredictorSet& set,
                                       const std::string& image_id = {});

// Round half up and clamp to [0, 255].
double quantize_sample(double value);
Plane quantize(const Plane& plane);

}  // namespace rip
