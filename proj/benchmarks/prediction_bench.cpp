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

#include <benchmark/benchmark.h>

#include <random>

#include "rip/designed.hpp"
#include "rip/engine.hpp"
#include "rip/regression.hpp"

namespace {

using namespace rip;

PredictorSet dense_set(int n, int k) {
  const BlockGeometry g(n);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> dist(-0.1, 0.1);
  std::vector<PredictorMatrix> modes;
  for (int p = 0; p < k; ++p) {
    Matrix w(g.block_len(), g.ref_len());
    for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = dist(rng);
    modes.push_back({p, "dense", std::move(w)});
  }
  return PredictorSet(g, std::move(modes), Provenance::kRipTrained);
}

ReferenceVector random_reference(int n) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> dist(0.0, 255.0);
  Vector x(reference_length(n));
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = dist(rng);
  return {x};
}

// All k predictions, one matrix-vector product per mode.
void BM_PerModePredict(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PredictorSet set = dense_set(n, static_cast<int>(state.range(1)));
  const ReferenceVector x = random_reference(n);
  for (auto _ : state) {
    for (const auto& mode : set.modes()) benchmark::DoNotOptimize(predict(mode, x));
  }
  state.counters["mac/s"] = benchmark::Counter(
      static_cast<double>(stack(set).multiply_accumulates()), benchmark::Counter::kIsIterationInvariantRate);
}

// All k predictions from one stacked product.
void BM_StackedPredict(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const StackedPredictor stacked = stack(dense_set(n, static_cast<int>(state.range(1))));
  const ReferenceVector x = random_reference(n);
  for (auto _ : state) benchmark::DoNotOptimize(predict_all(stacked, x));
  state.counters["mac/s"] = benchmark::Counter(static_cast<double>(stacked.multiply_accumulates()),
                                               benchmark::Counter::kIsIterationInvariantRate);
}

// Mode decision over a batch of 4096 blocks, as used by training and best case.
void BM_BatchArgmin(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PredictorSet set = dense_set(n, static_cast<int>(state.range(1)));
  const BlockGeometry& g = set.geometry();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(0.0, 255.0);
  Matrix refs(g.ref_len(), 4096), targets(g.block_len(), 4096);
  for (Eigen::Index i = 0; i < refs.size(); ++i) refs.data()[i] = dist(rng);
  for (Eigen::Index i = 0; i < targets.size(); ++i) targets.data()[i] = dist(rng);
  for (auto _ : state) benchmark::DoNotOptimize(batch_argmin(set.modes(), refs, targets));
  state.SetItemsProcessed(state.iterations() * 4096);
}

// Sparse designed matrices through the same dense path.
void BM_DesignedHevcStacked(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const StackedPredictor stacked = stack(build_hevc_set(BlockGeometry(n)));
  const ReferenceVector x = random_reference(n);
  for (auto _ : state) benchmark::DoNotOptimize(predict_all(stacked, x));
}

void Shapes(benchmark::internal::Benchmark* b) {
  for (int n : {4, 8, 16, 32}) {
    for (int k : {5, 35}) b->Args({n, k});
  }
}

BENCHMARK(BM_PerModePredict)->Apply(Shapes);
BENCHMARK(BM_StackedPredict)->Apply(Shapes);
BENCHMARK(BM_BatchArgmin)->Args({8, 9})->Args({8, 35})->Args({32, 35});
BENCHMARK(BM_DesignedHevcStacked)->Arg(8)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
