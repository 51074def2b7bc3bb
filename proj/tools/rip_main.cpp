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

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "rip/csv_report.hpp"
#include "rip/engine.hpp"
#include "rip/error.hpp"
#include "rip/image_io.hpp"
#include "rip/model_io.hpp"
#include "rip/parallel.hpp"
#include "rip/pipeline.hpp"
#include "rip/regression.hpp"

namespace {

using rip::CorpusImage;
using rip::EvaluationReport;
using rip::PredictorSet;

// Carries the name of the pipeline stage that failed.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& what)
      : std::runtime_error(what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

template <typename F>
auto stage(const std::string& name, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

struct Options {
  int block_size = 8;
  std::string modes = "33";
  std::string out;
  std::string corpus;
  std::string dataset;
  std::string init;
  std::string model;
  std::vector<std::string> images;
  std::string csv;
  std::string trace;
  std::string protocol = "worst";
  std::vector<std::string> inputs;
  double lambda = 1.0;
  std::uint32_t iterations = 100;
  int patches = 4000;
  std::uint64_t seed = 0;
};

std::vector<CorpusImage> load_images(const std::vector<std::string>& paths) {
  return stage("decode", [&] {
    std::vector<CorpusImage> images(paths.size());
    rip::parallel_for(paths.size(), [&](std::size_t i) { images[i] = rip::load_image(paths[i]); });
    return images;
  });
}

PredictorSet read_model(const std::string& path) {
  return stage("load model", [&] { return rip::load_model(path); });
}

void write_reports(const std::string& csv, const std::vector<EvaluationReport>& reports) {
  if (csv.empty()) {
    std::cout << rip::kCsvHeader << '\n';
    for (const auto& r : reports) std::cout << rip::format_csv_row(r) << '\n';
    return;
  }
  stage("write csv", [&] { rip::append_csv(csv, reports); });
}

void write_trace(const std::string& path, const rip::TrainingTrace& trace) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw rip::Error("cannot open " + path);
  out << "iteration,total_squared_error,total_squared_error_after_update,reassignments,"
         "max_matrix_change,cluster_sizes\n";
  for (std::size_t t = 0; t < trace.iterations.size(); ++t) {
    const rip::IterationRecord& it = trace.iterations[t];
    std::string sizes;
    for (std::size_t j = 0; j < it.cluster_sizes.size(); ++j) {
      if (j > 0) sizes += ';';
      sizes += std::to_string(it.cluster_sizes[j]);
    }
    out << t + 1 << ',' << rip::format_number(it.total_squared_error) << ','
        << rip::format_number(it.total_squared_error_after_update) << ',' << it.reassignments
        << ',' << rip::format_number(it.max_matrix_change) << ',' << sizes << '\n';
  }
  out.close();
  if (!out) throw rip::Error("write failed: " + path);
}

void run_build_modes(const Options& o) {
  const PredictorSet set = stage("build modes", [&] { return rip::designed_set(o.block_size, o.modes); });
  stage("write model", [&] { rip::save_model(set, o.out); });
}

void run_extract_patches(const Options& o) {
  const auto corpus = stage("decode", [&] { return rip::load_corpus(o.corpus); });
  const rip::PatchDataset data = stage("sample patches", [&] {
    return rip::collect_patches(corpus, rip::BlockGeometry(o.block_size), o.patches, o.seed);
  });
  stage("write patches", [&] { rip::save_dataset(data, o.out); });
}

void run_train(const Options& o) {
  const PredictorSet init = read_model(o.init);
  const rip::PatchDataset data = [&] {
    if (!o.dataset.empty()) {
      rip::PatchDataset d = stage("load patches", [&] { return rip::load_dataset(o.dataset); });
      if (d.geometry != init.geometry()) {
        throw StageError("load patches", "patch block size " +
                                             std::to_string(d.geometry.block_size()) +
                                             " does not match the model's " +
                                             std::to_string(init.geometry().block_size()));
      }
      return d;
    }
    const auto corpus = stage("decode", [&] { return rip::load_corpus(o.corpus); });
    return stage("sample patches", [&] {
      return rip::collect_patches(corpus, init.geometry(), o.patches, o.seed);
    });
  }();
  rip::TrainingConfig config;
  config.lambda = o.lambda;
  config.iterations = static_cast<int>(o.iterations);
  config.record_trace = !o.trace.empty();
  const rip::TrainingResult result = stage("train", [&] { return rip::train(data, init, config); });
  stage("write model", [&] { rip::save_model(result.set, o.out); });
  if (!o.trace.empty()) stage("write trace", [&] { write_trace(o.trace, result.trace); });
}

void run_eval(const Options& o, rip::Protocol protocol) {
  const PredictorSet set = read_model(o.model);
  const auto images = load_images(o.images);
  std::vector<EvaluationReport> reports(images.size());
  stage("evaluate", [&] {
    rip::parallel_for(images.size(), [&](std::size_t i) {
      reports[i] = protocol == rip::Protocol::kBestCase
                       ? rip::best_case_evaluate(images[i].plane, set, images[i].id)
                       : rip::worst_case_reconstruct(images[i].plane, set, images[i].id).report;
    });
  });
  write_reports(o.csv, reports);
}

void run_predict_image(const Options& o) {
  const PredictorSet set = read_model(o.model);
  const CorpusImage image = load_images(o.images).front();
  rip::Plane output;
  EvaluationReport report;
  stage("evaluate", [&] {
    if (o.protocol == "best") {
      report = rip::best_case_evaluate(image.plane, set, image.id);
      output = rip::best_case_prediction(image.plane, set, report);
    } else {
      rip::WorstCaseResult w = rip::worst_case_reconstruct(image.plane, set, image.id);
      output = std::move(w.reconstruction);
      report = std::move(w.report);
    }
  });
  stage("write image", [&] { rip::write_pgm(output, o.out); });
  if (!o.csv.empty()) write_reports(o.csv, {report});
}

void run_report(const Options& o) {
  stage("merge csv", [&] {
    std::vector<std::filesystem::path> inputs(o.inputs.begin(), o.inputs.end());
    rip::merge_csv(inputs, o.out);
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regression-based intra-prediction: build, train and evaluate predictor sets"};
  app.require_subcommand(1);
  Options o;

  const auto block_size_check = CLI::IsMember({4, 8, 16, 32});
  const auto modes_check = CLI::IsMember({"5", "9", "13", "17", "21", "25", "29", "33", "hevc"});

  auto* build = app.add_subcommand("build-modes", "Write a designed predictor set");
  build->add_option("--block-size", o.block_size, "Block size N")->check(block_size_check);
  build->add_option("--modes", o.modes, "Uniform angular mode count or 'hevc'")->check(modes_check);
  build->add_option("--out", o.out, "Output model file")->required();

  auto* extract = app.add_subcommand("extract-patches", "Sample training patches from a corpus");
  extract->add_option("--corpus", o.corpus, "Directory of PNG/PGM images")
      ->required()
      ->check(CLI::ExistingDirectory);
  extract->add_option("--block-size", o.block_size, "Block size N")->check(block_size_check);
  extract->add_option("--patches", o.patches, "Patches per image")->check(CLI::Range(1, 1 << 30));
  extract->add_option("--seed", o.seed, "Sampling seed");
  extract->add_option("--out", o.out, "Output patch file")->required();

  auto* train = app.add_subcommand("train", "Refine a predictor set on training patches");
  auto* corpus_opt = train->add_option("--corpus", o.corpus, "Directory of PNG/PGM images")
                         ->check(CLI::ExistingDirectory);
  auto* dataset_opt = train->add_option("--dataset", o.dataset, "Patch file from extract-patches")
                          ->check(CLI::ExistingFile);
  corpus_opt->excludes(dataset_opt);
  train->add_option("--init", o.init, "Initial model file")->required()->check(CLI::ExistingFile);
  train->add_option("--lambda", o.lambda, "Tikhonov weight")->check(CLI::NonNegativeNumber);
  train->add_option("--iters", o.iterations, "Iterations")->check(CLI::Range(1u, 0xFFFFFFFFu));
  train->add_option("--patches", o.patches, "Patches per image")->check(CLI::Range(1, 1 << 30));
  train->add_option("--seed", o.seed, "Sampling seed");
  train->add_option("--trace", o.trace, "Optional per-iteration CSV");
  train->add_option("--out", o.out, "Output model file")->required();

  auto* eval_best = app.add_subcommand("eval-best", "Best-case prediction PSNR");
  auto* eval_worst = app.add_subcommand("eval-worst", "Worst-case reconstruction PSNR");
  for (auto* cmd : {eval_best, eval_worst}) {
    cmd->add_option("--model", o.model, "Model file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--image", o.images, "Test image (repeatable)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--csv", o.csv, "Append rows to this CSV (stdout if omitted)");
  }

  auto* predict = app.add_subcommand("predict-image", "Write the prediction or reconstruction");
  predict->add_option("--model", o.model, "Model file")->required()->check(CLI::ExistingFile);
  predict->add_option("--image", o.images, "Input image")
      ->required()
      ->expected(1)
      ->check(CLI::ExistingFile);
  predict->add_option("--protocol", o.protocol, "best or worst")
      ->check(CLI::IsMember({"best", "worst"}));
  predict->add_option("--out", o.out, "Output PGM")->required();
  predict->add_option("--csv", o.csv, "Also append the report row to this CSV");

  auto* report = app.add_subcommand("report", "Merge evaluation CSVs");
  report->add_option("--in", o.inputs, "Input CSV files")->required()->check(CLI::ExistingFile);
  report->add_option("--out", o.out, "Merged CSV")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) {
      run_build_modes(o);
    } else if (extract->parsed()) {
      run_extract_patches(o);
    } else if (train->parsed()) {
      if (o.corpus.empty() && o.dataset.empty()) {
        throw StageError("arguments", "train needs --corpus or --dataset");
      }
      run_train(o);
    } else if (eval_best->parsed()) {
      run_eval(o, rip::Protocol::kBestCase);
    } else if (eval_worst->parsed()) {
      run_eval(o, rip::Protocol::kWorstCase);
    } else if (predict->parsed()) {
      run_predict_image(o);
    } else if (report->parsed()) {
      run_report(o);
    }
  } catch (const StageError& e) {
    std::fprintf(stderr, "rip: %s: %s\n", e.stage().c_str(), e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "rip: %s\n", e.what());
    return 1;
  }
  return 0;
}
