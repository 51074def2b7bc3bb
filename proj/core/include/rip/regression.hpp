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

#include <vector>

#include "rip/designed.hpp"
#include "rip/geometry.hpp"

namespace rip {

struct TrainingConfig {
  double lambda = 1.0;  // Tikhonov weight on raw [0, 255] pixel scale
  int iterations = 100;
  bool record_trace = true;
};

// Best mode per dataset column. Ties go to the lowest mode index.
struct ClusterAssignment {
  std::vector<int> labels;
  Vector per_sample_error;  // ||y_s - M_{labels[s]} x_s||_2
};

struct IterationRecord {
  // Sum over samples of the squared error under the matrices the samples
  // were assigned with (before this iteration's update).
  double total_squared_error = 0.0;
  // Same sum re-evaluated with the updated matrices and unchanged labels.
  double total_squared_error_after_update = 0.0;
  std::vector<int> cluster_sizes;
  // Labels that differ from the previous iteration; every sample counts on
  // the first iteration.
  long long reassignments = 0;
  // Largest absolute change of any matrix entry during the update.
  double max_matrix_change = 0.0;
};

struct TrainingTrace {
  std::vector<IterationRecord> iterations;
};

struct TrainingResult {
  PredictorSet set;
  TrainingTrace trace;
};

// ||y - Mx||_2.
double prediction_error(const PredictorMatrix& mode, const ReferenceVector& x,
                        const TargetBlock& y);

// Per-column argmin of the squared prediction error over `modes`, computed
// in fixed column chunks so the result is independent of the thread count.
struct BatchArgmin {
  std::vector<int> labels;
  Vector squared_error;
};
BatchArgmin batch_argmin(const std::vector<PredictorMatrix>& modes, const Matrix& references,
                         const Matrix& targets);

ClusterAssignment assign_clusters(const PatchDataset& dataset, const PredictorSet& set);

// M = Y X^T (X X^T + lambda I)^{-1}, via a Cholesky solve of the symmetric
// system. Throws SingularSystemError when lambda == 0 and X X^T is
// numerically rank deficient (reported with cluster = -1).
Matrix ridge_update(const Matrix& references, const Matrix& targets, double lambda);

// Alternates cluster assignment and per-cluster ridge updates for
// config.iterations rounds, stopping early only at an exact fixed point (no
// reassignment and no matrix entry moving by 1e-12 or more). Empty clusters
// keep their previous matrix. Mode j of the result refines mode j of `init`.
TrainingResult train(const PatchDataset& dataset, const PredictorSet& init,
                     const TrainingConfig& config);

}  // namespace rip
