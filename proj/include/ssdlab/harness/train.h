// Copyright 2026 The ssdlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SSDLAB_HARNESS_TRAIN_H_
#define SSDLAB_HARNESS_TRAIN_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ssdlab/envs/environment.h"
#include "ssdlab/harness/run_config.h"
#include "ssdlab/ppo/population.h"

namespace ssdlab::harness {

// A population restored from a run checkpoint, with the config it was
// trained under.
struct LoadedRun {
  RunConfig config;
  nlohmann::json meta;
  std::unique_ptr<envs::Environment> env;
  std::unique_ptr<ppo::Population> population;
};

// Throws ConfigError on a corrupt file or when the stored tensors do not
// match the networks the stored config builds.
LoadedRun LoadRunCheckpoint(const std::filesystem::path& path);

struct EpochRecord {
  int64_t epoch = 0;  // 1-based
  int64_t env_steps = 0;
  double eval_mean_return = 0;
  double eval_return_se = 0;
  double eval_equity = 0;
  int64_t best_epoch = 0;
};

struct TrainOptions {
  std::filesystem::path out_dir;
  // Continue from the newest checkpoint in out_dir.
  bool resume = false;
  // Stop once this many epochs are complete in total (0: run to the end).
  int64_t stop_after_epochs = 0;
  int eval_threads = 0;
  // Called after every epoch; returning true ends training early.
  std::function<bool(const EpochRecord&)> on_epoch;
  // Human-readable progress lines.
  std::function<void(const std::string&)> progress;
};

struct TrainResult {
  std::vector<EpochRecord> epochs;  // epochs run by this call
  int64_t epochs_completed = 0;     // including resumed ones
  int64_t env_steps = 0;
  int64_t best_epoch = 0;
  double best_return = 0;
  bool finished = false;  // reached total_env_steps
};

// Run directory layout:
//   config.json                full config with defaults
//   train_log.jsonl            one "update" record per PPO update and one
//                              "epoch" record per epoch
//   checkpoints/epoch_NNNN.ckpt
//   best_epoch.json            epoch with the highest evaluation return
// Throws ConfigError for unusable configs or run directories and
// NumericalAbort (after writing checkpoints/abort.ckpt) on a non-finite loss.
TrainResult Train(const RunConfig& config, const TrainOptions& options);

std::filesystem::path EpochCheckpointPath(const std::filesystem::path& out_dir, int64_t epoch);

}  // namespace ssdlab::harness

#endif  // SSDLAB_HARNESS_TRAIN_H_
