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

#include "rip/engine.hpp"

#include <algorithm>
#include <cmath>

#include "rip/error.hpp"
#include "rip/regression.hpp"

namespace rip {

namespace {

void check_reference(const BlockGeometry& g, const ReferenceVector& x) {
  if (x.values.size() != g.ref_len()) {
    throw InvalidArgument("reference vector has " + std::to_string(x.values.size()) +
                          " samples, expected " + std::to_string(g.ref_len()));
  }
}

void check_target(const BlockGeometry& g, const TargetBlock& y) {
  if (y.values.size() != g.block_len()) {
    throw InvalidArgument("target block has " + std::to_string(y.values.size()) +
                          " pixels, expected " + std::to_string(g.block_len()));
  }
}

}  // namespace

StackedPredictor stack(const PredictorSet& set) {
  if (set.size() == 0) throw InvalidArgument("cannot stack an empty predictor set");
  const BlockGeometry& g = set.geometry();
  StackedPredictor out{g, Matrix(static_cast<Eigen::Index>(set.size()) * g.block_len(),
                                 g.ref_len()),
                       set.size()};
  for (int p = 0; p < set.size(); ++p) {
    out.weights.middleRows(static_cast<Eigen::Index>(p) * g.block_len(), g.block_len()) =
        set.mode(p).weights;
  }
  return out;
}

TargetBlock predict(const PredictorMatrix& mode, const ReferenceVector& x) {
  if (mode.weights.cols() != x.values.size()) {
    throw InvalidArgument("reference vector has " + std::to_string(x.values.size()) +
                          " samples, mode expects " + std::to_string(mode.weights.cols()));
  }
  return {mode.weights * x.values};
}

std::vector<TargetBlock> predict_all(const StackedPredictor& stacked, const ReferenceVector& x) {
  check_reference(stacked.geometry, x);
  const Vector all = stacked.weights * x.values;
  const int n = stacked.geometry.block_len();
  std::vector<TargetBlock> out;
  out.reserve(static_cast<std::size_t>(stacked.k));
  for (int p = 0; p < stacked.k; ++p) {
    out.push_back({all.segment(static_cast<Eigen::Index>(p) * n, n)});
  }
  return out;
}

ModeChoice select_mode(const PredictorSet& set, const ReferenceVector& x, const TargetBlock& y) {
  if (set.size() == 0) throw InvalidArgument("predictor set is empty");
  check_reference(set.geometry(), x);
  check_target(set.geometry(), y);
  ModeChoice best;
  double best_sq = std::numeric_limits<double>::infinity();
  for (int p = 0; p < set.size(); ++p) {
    TargetBlock estimate = predict(set.mode(p), x);
    const double sq = (y.values - estimate.values).squaredNorm();
    if (sq < best_sq) {
      best_sq = sq;
      best.mode = p;
      best.estimate = std::move(estimate);
    }
  }
  best.error = std::sqrt(best_sq);
  return best;
}

ModeChoice select_mode(const StackedPredictor& stacked, const ReferenceVector& x,
                       const TargetBlock& y) {
  check_reference(stacked.geometry, x);
  check_target(stacked.geometry, y);
  const Vector all = stacked.weights * x.values;
  const int n = stacked.geometry.block_len();
  int best_mode = 0;
  double best_sq = std::numeric_limits<double>::infinity();
  for (int p = 0; p < stacked.k; ++p) {
    const double sq = (y.values - all.segment(static_cast<Eigen::Index>(p) * n, n)).squaredNorm();
    if (sq < best_sq) {
      best_sq = sq;
      best_mode = p;
    }
  }
  return {best_mode, {all.segment(static_cast<Eigen::Index>(best_mode) * n, n)},
          std::sqrt(best_sq)};
}

double psnr_from_mse(double mse) {
  if (mse < 0.0 || std::isnan(mse)) throw InvalidArgument("MSE must be non-negative");
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(kPeak * kPeak / mse);
}

bool is_infinite_psnr(double psnr_db) { return std::isinf(psnr_db) && psnr_db > 0.0; }

double mean_squared_error(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidArgument("PSNR inputs differ in size");
  if (a.empty()) throw InvalidArgument("PSNR of empty input");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum / static_cast<double>(a.size());
}

double psnr(std::span<const double> a, std::span<const double> b) {
  return psnr_from_mse(mean_squared_error(a, b));
}

double psnr(const Plane& a, const Plane& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw InvalidArgument("PSNR inputs differ in shape");
  }
  return psnr(std::span<const double>(a.pixels()), std::span<const double>(b.pixels()));
}

std::string_view to_string(Protocol protocol) {
  return protocol == Protocol::kBestCase ? "best" : "worst";
}

double quantize_sample(double value) {
  return std::clamp(std::floor(value + 0.5), 0.0, 255.0);
}

Plane quantize(const Plane& plane) {
  Plane out = plane;
  for (double& v : out.pixels()) v = quantize_sample(v);
  return out;
}

namespace {

EvaluationReport make_report(const std::string& image_id, const PredictorSet& set,
                             Protocol protocol) {
  EvaluationReport report;
  report.image_id = image_id;
  report.geometry = set.geometry();
  report.protocol = protocol;
  report.provenance = set.provenance();
  report.mode_count = set.size();
  report.mode_histogram.assign(static_cast<std::size_t>(set.size()), 0);
  return report;
}

}  // namespace

EvaluationReport best_case_evaluate(const Plane& plane, const PredictorSet& set,
                                    const std::string& image_id) {
  const BlockGeometry& g = set.geometry();
  const int n = g.block_size();
  const int rows = plane.height() / n;
  const int cols = plane.width() / n;
  if (rows == 0 || cols == 0) {
    throw InvalidArgument("image " + std::to_string(plane.width()) + "x" +
                          std::to_string(plane.height()) + " is smaller than one " +
                          std::to_string(n) + "x" + std::to_string(n) + " block");
  }
  if (set.size() == 0) throw InvalidArgument("predictor set is empty");

  PatchDataset blocks(g);
  blocks.references.resize(g.ref_len(), static_cast<Eigen::Index>(rows) * cols);
  blocks.targets.resize(g.block_len(), static_cast<Eigen::Index>(rows) * cols);
  for (int a = 0; a < rows; ++a) {
    for (int b = 0; b < cols; ++b) {
      const Eigen::Index s = static_cast<Eigen::Index>(a) * cols + b;
      blocks.references.col(s) = extract_reference(plane, a * n, b * n, g).values;
      blocks.targets.col(s) = extract_block(plane, a * n, b * n, g).values;
    }
  }
  const BatchArgmin choice = batch_argmin(set.modes(), blocks.references, blocks.targets);

  EvaluationReport report = make_report(image_id, set, Protocol::kBestCase);
  report.blocks.reserve(static_cast<std::size_t>(rows) * cols);
  double total = 0.0;
  for (int a = 0; a < rows; ++a) {
    for (int b = 0; b < cols; ++b) {
      const auto s = static_cast<std::size_t>(a) * cols + b;
      const int mode = choice.labels[s];
      const double sq = choice.squared_error[static_cast<Eigen::Index>(s)];
      report.blocks.push_back({a * n, b * n, mode, sq});
      ++report.mode_histogram[static_cast<std::size_t>(mode)];
      total += sq;
    }
  }
  report.mse = total / (static_cast<double>(report.blocks.size()) * g.block_len());
  report.psnr_db = psnr_from_mse(report.mse);
  return report;
}

Plane best_case_prediction(const Plane& plane, const PredictorSet& set,
                           const EvaluationReport& report) {
  const BlockGeometry& g = set.geometry();
  if (report.geometry != g || report.mode_count != set.size()) {
    throw InvalidArgument("report does not belong to this predictor set");
  }
  const int n = g.block_size();
  Plane out = plane;
  for (const BlockRecord& b : report.blocks) {
    if (b.mode < 0 || b.mode >= set.size()) throw InvalidArgument("mode index out of range");
    const TargetBlock y =
        predict(set.mode(b.mode), extract_reference(plane, b.row, b.col, g));
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) out(b.row + j, b.col + i) = y.values[j * n + i];
    }
  }
  return out;
}

WorstCaseResult worst_case_reconstruct(const Plane& plane, const PredictorSet& set,
                                       const std::string& image_id) {
  const BlockGeometry& g = set.geometry();
  const int n = g.block_size();
  if (plane.width() == 0 || plane.height() == 0 || plane.width() % n != 0 ||
      plane.height() % n != 0) {
    throw InvalidArgument("worst-case reconstruction needs dimensions that are positive "
                          "multiples of " + std::to_string(n) + ", got " +
                          std::to_string(plane.width()) + "x" + std::to_string(plane.height()));
  }
  const StackedPredictor stacked = stack(set);

  WorstCaseResult result{Plane(plane.width(), plane.height(), 0.0),
                         make_report(image_id, set, Protocol::kWorstCase)};
  Plane& recon = result.reconstruction;
  AvailabilityMask decoded(plane.width(), plane.height(), false);

  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) recon(j, i) = plane(j, i);
  }
  decoded.mark_block(0, 0, n);

  for (int r = 0; r < plane.height(); r += n) {
    for (int c = 0; c < plane.width(); c += n) {
      if (r == 0 && c == 0) continue;
      const ReferenceVector x = extract_reference(recon, r, c, g, decoded);
      const TargetBlock y = extract_block(plane, r, c, g);
      const ModeChoice choice = select_mode(stacked, x, y);
      for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) recon(r + j, c + i) = choice.estimate.values[j * n + i];
      }
      decoded.mark_block(r, c, n);
      result.report.blocks.push_back({r, c, choice.mode, choice.error * choice.error});
      ++result.report.mode_histogram[static_cast<std::size_t>(choice.mode)];
    }
  }

  const Plane written = quantize(recon);
  result.report.mse = mean_squared_error(written.pixels(), plane.pixels());
  result.report.psnr_db = psnr_from_mse(result.report.mse);
  return result;
}

}  // namespace rip
