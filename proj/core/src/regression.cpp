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

#include "rip/regression.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <limits>
#include <string>

#include "rip/error.hpp"
#include "rip/parallel.hpp"

namespace rip {

namespace {

constexpr Eigen::Index kChunkColumns = 512;
constexpr double kFixedPointTolerance = 1e-12;

void check_shapes(const Matrix& weights, const Vector& x, const Vector& y) {
  if (weights.cols() != x.size() || weights.rows() != y.size()) {
    throw InvalidArgument("shape mismatch: matrix " + std::to_string(weights.rows()) + "x" +
                          std::to_string(weights.cols()) + ", reference " +
                          std::to_string(x.size()) + ", block " + std::to_string(y.size()));
  }
}

}  // namespace

double prediction_error(const PredictorMatrix& mode, const ReferenceVector& x,
                        const TargetBlock& y) {
  check_shapes(mode.weights, x.values, y.values);
  return (y.values - mode.weights * x.values).norm();
}

BatchArgmin batch_argmin(const std::vector<PredictorMatrix>& modes, const Matrix& references,
                         const Matrix& targets) {
  if (modes.empty()) throw InvalidArgument("predictor set is empty");
  if (references.cols() != targets.cols()) {
    throw InvalidArgument("reference and target column counts differ");
  }
  for (const auto& m : modes) {
    if (m.weights.cols() != references.rows() || m.weights.rows() != targets.rows()) {
      throw InvalidArgument("mode '" + m.label + "' does not match the sample shapes");
    }
  }

  const Eigen::Index total = references.cols();
  BatchArgmin out;
  out.labels.assign(static_cast<std::size_t>(total), 0);
  out.squared_error.resize(total);

  const auto chunks = static_cast<std::size_t>((total + kChunkColumns - 1) / kChunkColumns);
  parallel_for(chunks, [&](std::size_t chunk) {
    const Eigen::Index begin = static_cast<Eigen::Index>(chunk) * kChunkColumns;
    const Eigen::Index width = std::min(kChunkColumns, total - begin);
    const auto x = references.middleCols(begin, width);
    const auto y = targets.middleCols(begin, width);

    Matrix estimate(targets.rows(), width);
    Eigen::RowVectorXd best =
        Eigen::RowVectorXd::Constant(width, std::numeric_limits<double>::infinity());
    for (std::size_t p = 0; p < modes.size(); ++p) {
      estimate.noalias() = modes[p].weights * x;
      const Eigen::RowVectorXd err = (y - estimate).colwise().squaredNorm();
      for (Eigen::Index s = 0; s < width; ++s) {
        if (err[s] < best[s]) {
          best[s] = err[s];
          out.labels[static_cast<std::size_t>(begin + s)] = static_cast<int>(p);
        }
      }
    }
    out.squared_error.segment(begin, width) = best.transpose();
  });
  return out;
}

ClusterAssignment assign_clusters(const PatchDataset& dataset, const PredictorSet& set) {
  if (dataset.count() == 0) throw InvalidArgument("cannot assign an empty dataset");
  if (set.size() == 0) throw InvalidArgument("cannot assign against an empty predictor set");
  if (!(dataset.geometry == set.geometry())) {
    throw InvalidArgument("dataset and predictor set block sizes differ");
  }
  BatchArgmin batch = batch_argmin(set.modes(), dataset.references, dataset.targets);
  return {std::move(batch.labels), batch.squared_error.cwiseSqrt()};
}

Matrix ridge_update(const Matrix& references, const Matrix& targets, double lambda) {
  if (!(lambda >= 0.0)) throw InvalidArgument("lambda must be >= 0");
  if (references.cols() == 0) throw InvalidArgument("ridge update needs at least one sample");
  if (references.cols() != targets.cols()) {
    throw InvalidArgument("reference and target column counts differ");
  }

  Matrix gram = references * references.transpose();
  gram.diagonal().array() += lambda;
  const Matrix cross = targets * references.transpose();

  Eigen::LLT<Matrix> llt(gram);
  const bool singular =
      llt.info() != Eigen::Success ||
      (lambda == 0.0 &&
       llt.rcond() < static_cast<double>(gram.rows()) * std::numeric_limits<double>::epsilon());
  if (singular) {
    throw SingularSystemError(
        "X X^T + lambda I is singular (lambda = " + std::to_string(lambda) + ", " +
            std::to_string(references.cols()) + " samples); use lambda > 0",
        -1);
  }
  // M gram = cross and gram is symmetric, so M^T = gram^{-1} cross^T.
  return llt.solve(cross.transpose()).transpose();
}

namespace {

double total_error_under(const std::vector<PredictorMatrix>& modes,
                         const std::vector<std::vector<Eigen::Index>>& members,
                         const PatchDataset& dataset) {
  double total = 0.0;
  for (std::size_t j = 0; j < modes.size(); ++j) {
    if (members[j].empty()) continue;
    const Matrix x = dataset.references(Eigen::all, members[j]);
    const Matrix y = dataset.targets(Eigen::all, members[j]);
    total += (y - modes[j].weights * x).squaredNorm();
  }
  return total;
}

}  // namespace

TrainingResult train(const PatchDataset& dataset, const PredictorSet& init,
                     const TrainingConfig& config) {
  if (config.iterations < 1) throw InvalidArgument("iterations must be >= 1");
  if (!(config.lambda >= 0.0)) throw InvalidArgument("lambda must be >= 0");
  if (dataset.count() == 0) throw InvalidArgument("training dataset is empty");
  if (!(dataset.geometry == init.geometry())) {
    throw InvalidArgument("dataset and initial predictor set block sizes differ");
  }

  std::vector<PredictorMatrix> modes = init.modes();
  const std::size_t k = modes.size();
  std::vector<int> previous;
  TrainingTrace trace;
  int completed = 0;

  for (int it = 0; it < config.iterations; ++it) {
    const BatchArgmin assignment =
        batch_argmin(modes, dataset.references, dataset.targets);

    IterationRecord record;
    record.total_squared_error = assignment.squared_error.sum();
    record.cluster_sizes.assign(k, 0);
    std::vector<std::vector<Eigen::Index>> members(k);
    for (Eigen::Index s = 0; s < dataset.count(); ++s) {
      const int label = assignment.labels[static_cast<std::size_t>(s)];
      members[static_cast<std::size_t>(label)].push_back(s);
      ++record.cluster_sizes[static_cast<std::size_t>(label)];
    }
    if (previous.empty()) {
      record.reassignments = dataset.count();
    } else {
      for (std::size_t s = 0; s < previous.size(); ++s) {
        record.reassignments += previous[s] != assignment.labels[s] ? 1 : 0;
      }
    }

    std::vector<Matrix> updated(k);
    parallel_for(k, [&](std::size_t j) {
      if (members[j].empty()) return;
      try {
        updated[j] = ridge_update(dataset.references(Eigen::all, members[j]),
                                  dataset.targets(Eigen::all, members[j]), config.lambda);
      } catch (const SingularSystemError& e) {
        throw SingularSystemError("cluster " + std::to_string(j) + ": " + e.what(),
                                  static_cast<int>(j));
      }
    });
    for (std::size_t j = 0; j < k; ++j) {
      if (members[j].empty()) continue;
      record.max_matrix_change = std::max(
          record.max_matrix_change, (updated[j] - modes[j].weights).cwiseAbs().maxCoeff());
      modes[j].weights = std::move(updated[j]);
    }
    record.total_squared_error_after_update = total_error_under(modes, members, dataset);

    ++completed;
    const bool fixed_point = !previous.empty() && record.reassignments == 0 &&
                             record.max_matrix_change < kFixedPointTolerance;
    previous = assignment.labels;
    if (config.record_trace) trace.iterations.push_back(std::move(record));
    if (fixed_point) break;
  }

  return {PredictorSet(init.geometry(), std::move(modes), Provenance::kRipTrained,
                       config.lambda, completed),
          std::move(trace)};
}

}  // namespace rip
