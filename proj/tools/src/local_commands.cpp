// Copyright 2026 The LipLink Authors.
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

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "liplink/dataset/lexicon.hpp"
#include "liplink/dataset/manifest.hpp"
#include "liplink/dataset/synthetic.hpp"
#include "liplink/error.hpp"
#include "liplink/eval/metrics.hpp"
#include "liplink/eval/report.hpp"
#include "liplink/eval/sweep.hpp"
#include "liplink/io.hpp"
#include "liplink/media/lvf.hpp"
#include "liplink/nn/train.hpp"
#include "liplink/nn/weights_io.hpp"

namespace liplink::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json read_json_file(const fs::path& path) {
  auto parsed = json::parse(read_text_file(path), nullptr, false);
  if (parsed.is_discarded()) throw Error(ErrorCode::kSchemaError, path.string() + ": invalid JSON");
  return parsed;
}

std::uint32_t inferred_classes(const dataset::Manifest& manifest) {
  std::uint32_t classes = 0;
  for (const auto& e : manifest.entries) classes = std::max(classes, e.phrase_id + 1);
  return classes;
}

media::RoiConfig roi_for(const nn::ModelSpec& spec) {
  media::RoiConfig roi;
  roi.output_size = spec.input_side;
  return roi;
}

// Spec overrides on top of defaults; num_classes defaults to the manifest's
// label range.
nn::ModelSpec load_spec(const std::string& file, const dataset::Manifest& manifest) {
  nn::ModelSpec base;
  base.num_classes = inferred_classes(manifest);
  if (file.empty()) {
    base.validate();
    return base;
  }
  auto spec = nn::model_spec_from_json(read_json_file(file), base);
  spec.validate();
  return spec;
}

nn::TrainConfig load_config(const std::string& file, std::optional<std::uint64_t> seed) {
  nn::TrainConfig config =
      file.empty() ? nn::TrainConfig{} : nn::train_config_from_json(read_json_file(file));
  if (seed) config.seed = *seed;
  config.validate();
  return config;
}

struct SynthArgs {
  dataset::SyntheticParams params;
  std::uint32_t fps = 25;
  std::string out_dir;
};

int run_synth(const SynthArgs& args) {
  args.params.validate();
  const fs::path out(args.out_dir);
  fs::create_directories(out);
  dataset::Manifest manifest;
  for (const auto& sample : dataset::generate_synthetic(args.params)) {
    char name[64];
    std::snprintf(name, sizeof name, "phrase%03u_rep%02u.lvf", sample.label, sample.repetition);
    write_file_atomic(out / name, media::encode_lvf(dataset::to_face_canvas(sample.input, args.fps)));
    manifest.entries.push_back({name, std::nullopt, sample.label, sample.repetition});
  }
  write_file_atomic(out / "manifest.json", save_manifest(manifest));

  dataset::PhraseLexicon lexicon;
  for (std::uint32_t k = 0; k < args.params.num_classes; ++k) {
    lexicon.phrases.push_back("Synthetic phrase " + std::to_string(k));
  }
  write_file_atomic(out / "lexicon.json", dataset::save_lexicon(lexicon));
  std::cout << "wrote " << manifest.entries.size() << " recordings to " << out.string() << "\n";
  return kOk;
}

struct TrainArgs {
  std::string manifest;
  std::string spec;
  std::string config;
  std::string out;
  std::string history;
  double ratio = 0.6;
  std::optional<std::uint64_t> seed;
};

int run_train(const TrainArgs& args) {
  const auto manifest = dataset::load_manifest(args.manifest);
  const auto spec = load_spec(args.spec, manifest);
  const auto config = load_config(args.config, args.seed);
  const auto samples =
      dataset::load_manifest_samples(manifest, roi_for(spec), spec.sequence_length);
  const auto assembled = dataset::make_training_set(samples, args.ratio, config.seed);
  const auto result = nn::train(spec, assembled.data, config);

  write_file_atomic(args.out, nn::save_weights(result.weights));
  const std::string history_path = args.history.empty() ? args.out + ".history.json" : args.history;
  write_file_atomic(history_path, nn::to_json(result.history).dump(2) + "\n");

  const auto& h = result.history;
  char line[160];
  std::snprintf(line, sizeof line, "epochs=%zu best_epoch=%u val_loss=%.6f val_top1=%.4f\n",
                h.train_loss.size(), h.best_epoch, h.validation_loss[h.best_epoch],
                h.validation_accuracy[h.best_epoch]);
  std::cout << line;
  return kOk;
}

struct EvalArgs {
  std::string weights;
  std::string manifest;
  std::uint32_t k = 5;
  std::string out_dir;
  std::string subset = "all";
  double ratio = 0.6;
  std::uint64_t seed = 0;
};

int run_eval(const EvalArgs& args) {
  const auto weights = nn::load_weights(read_file(args.weights));
  const auto& spec = weights.spec;
  if (args.k < 1 || args.k > spec.num_classes) {
    throw UsageError("--k must be in [1, " + std::to_string(spec.num_classes) + "]");
  }
  const auto manifest = dataset::load_manifest(args.manifest);
  auto samples = dataset::load_manifest_samples(manifest, roi_for(spec), spec.sequence_length);
  if (args.subset != "all") {
    auto assembled = dataset::make_training_set(samples, args.ratio, args.seed);
    samples = args.subset == "train" ? std::move(assembled.data.train)
                                     : std::move(assembled.data.validation);
  }
  const auto report = eval::evaluate_model(weights, samples, args.k);
  eval::render_report(report, args.out_dir);
  std::cout << eval::format_summary(report);
  return kOk;
}

struct SweepArgs {
  std::string grid;
  std::string manifest;
  std::string out_dir;
  double ratio = 0.6;
  std::uint64_t seed = 0;
};

int run_sweep(const SweepArgs& args) {
  const auto manifest = dataset::load_manifest(args.manifest);
  nn::ModelSpec base;
  base.num_classes = inferred_classes(manifest);
  const auto grid = eval::expand_grid(read_json_file(args.grid), base, nn::TrainConfig{});
  if (grid.empty()) throw UsageError("grid has no points");
  const auto& first = grid.front().spec;
  const auto samples =
      dataset::load_manifest_samples(manifest, roi_for(first), first.sequence_length);
  const auto assembled = dataset::make_training_set(samples, args.ratio, args.seed);
  const auto result = eval::run_sweep(grid, assembled.data);

  fs::create_directories(args.out_dir);
  write_file_atomic(fs::path(args.out_dir) / "sweep.json", eval::to_json(result).dump(2) + "\n");
  for (const auto& entry : result.entries) {
    char line[96];
    if (entry.error) {
      std::snprintf(line, sizeof line, "point=%zu error\n", entry.grid_index);
    } else {
      std::snprintf(line, sizeof line, "point=%zu val_top1=%.4f\n", entry.grid_index,
                    entry.validation_top1);
    }
    std::cout << line;
  }
  return kOk;
}

}  // namespace

void add_local_commands(CLI::App& app, Action& action) {
  auto synth_args = std::make_shared<SynthArgs>();
  auto* synth = app.add_subcommand("synth", "Generate a synthetic phrase corpus with a manifest");
  synth->add_option("--classes", synth_args->params.num_classes, "Number of phrases (>= 2)")
      ->capture_default_str();
  synth->add_option("--reps", synth_args->params.reps, "Repetitions per phrase")
      ->capture_default_str();
  synth->add_option("--length", synth_args->params.length, "Frames per clip")
      ->capture_default_str();
  synth->add_option("--side", synth_args->params.side, "Mouth crop side in pixels")
      ->capture_default_str();
  synth->add_option("--noise", synth_args->params.noise, "Uniform noise amplitude")
      ->capture_default_str();
  synth->add_option("--seed", synth_args->params.seed, "Noise seed")->capture_default_str();
  synth->add_option("--fps", synth_args->fps, "Frame rate stored in the LVF header")
      ->capture_default_str();
  synth->add_option("--out-dir", synth_args->out_dir, "Output directory")->required();
  synth->callback([&action, synth_args] { action = [synth_args] { return run_synth(*synth_args); }; });

  auto train_args = std::make_shared<TrainArgs>();
  auto* train = app.add_subcommand("train", "Train a model on a manifest");
  train->add_option("--manifest", train_args->manifest, "Data manifest")->required();
  train->add_option("--spec", train_args->spec, "Model spec overrides (JSON)");
  train->add_option("--config", train_args->config, "Training config overrides (JSON)");
  train->add_option("--out", train_args->out, "Output weights file")->required();
  train->add_option("--history", train_args->history, "History JSON (default <out>.history.json)");
  train->add_option("--ratio", train_args->ratio, "Training fraction per phrase")
      ->capture_default_str();
  train->add_option("--seed", train_args->seed, "Overrides the config seed");
  train->callback([&action, train_args] { action = [train_args] { return run_train(*train_args); }; });

  auto eval_args = std::make_shared<EvalArgs>();
  auto* evaluate = app.add_subcommand("eval", "Evaluate weights and write report artifacts");
  evaluate->add_option("--weights", eval_args->weights, "Weights file")->required();
  evaluate->add_option("--manifest", eval_args->manifest, "Data manifest")->required();
  evaluate->add_option("--k", eval_args->k, "Rank depth of the top-k confusion matrix")
      ->capture_default_str();
  evaluate->add_option("--out-dir", eval_args->out_dir, "Report directory")->required();
  evaluate->add_option("--subset", eval_args->subset, "Samples to evaluate")
      ->check(CLI::IsMember({"all", "train", "validation"}))
      ->capture_default_str();
  evaluate->add_option("--ratio", eval_args->ratio, "Split ratio for --subset")
      ->capture_default_str();
  evaluate->add_option("--seed", eval_args->seed, "Split seed for --subset")->capture_default_str();
  evaluate->callback([&action, eval_args] { action = [eval_args] { return run_eval(*eval_args); }; });

  auto sweep_args = std::make_shared<SweepArgs>();
  auto* sweep = app.add_subcommand("sweep", "Train every point of a hyperparameter grid");
  sweep->add_option("--grid", sweep_args->grid, "Grid file (JSON)")->required();
  sweep->add_option("--manifest", sweep_args->manifest, "Data manifest")->required();
  sweep->add_option("--out-dir", sweep_args->out_dir, "Result directory")->required();
  sweep->add_option("--ratio", sweep_args->ratio, "Training fraction per phrase")
      ->capture_default_str();
  sweep->add_option("--seed", sweep_args->seed, "Split seed")->capture_default_str();
  sweep->callback([&action, sweep_args] { action = [sweep_args] { return run_sweep(*sweep_args); }; });
}

}  // namespace liplink::cli
