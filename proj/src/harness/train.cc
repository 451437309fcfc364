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

#include "ssdlab/harness/train.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ssdlab/common/error.h"
#include "ssdlab/harness/evaluate.h"
#include "ssdlab/harness/state_json.h"
#include "ssdlab/nn/checkpoint.h"
#include "ssdlab/ppo/rollout.h"
#include "ssdlab/ppo/update.h"

namespace ssdlab::harness {

namespace fs = std::filesystem;

namespace {

constexpr char kLogName[] = "train_log.jsonl";

struct RunState {
  int64_t epoch = 0;  // completed epochs
  int64_t env_steps = 0;
  uint64_t update_index = 0;
  int64_t best_epoch = 0;
  double best_return = 0;
  uint64_t log_bytes = 0;
};

Json MetaFor(const RunConfig& config, const RunState& s, const ppo::Collector& collector) {
  return {{"config", RunConfigToJson(config)},
          {"config_digest", ConfigDigest(config)},
          {"epoch", s.epoch},
          {"env_steps", s.env_steps},
          {"update_index", s.update_index},
          {"best_epoch", s.best_epoch},
          {"best_return", s.best_return},
          {"log_bytes", s.log_bytes},
          {"collector", CollectorSnapshotToJson(collector.Snapshot())}};
}

void SaveRun(const fs::path& path, const ppo::Population& pop, const Json& meta) {
  nn::Checkpoint ck;
  pop.AppendTo(ck);
  ck.meta = meta.dump();
  nn::SaveCheckpoint(path.string(), ck);
}

void WriteTextFile(const fs::path& path, const std::string& text) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + tmp.string());
    out << text;
    if (!out) throw ConfigError("failed writing " + tmp.string());
  }
  fs::rename(tmp, path);
}

// Appends one record; returns the log size afterwards.
uint64_t AppendRecord(const fs::path& log, const Json& record) {
  std::ofstream out(log, std::ios::binary | std::ios::app);
  if (!out) throw ConfigError("cannot append to " + log.string());
  out << record.dump() << '\n';
  out.flush();
  if (!out) throw ConfigError("failed writing " + log.string());
  return static_cast<uint64_t>(fs::file_size(log));
}

Json UpdateRecord(const RunState& s, int64_t epoch, const ppo::UpdateReport& r,
                  const ppo::RolloutBuffer& buffer) {
  Json returns = Json::array();
  const int k = static_cast<int>(buffer.agents.size());
  for (int i = 0; i < k; ++i) {
    if (buffer.finished.empty()) {
      returns.push_back(nullptr);
      continue;
    }
    double sum = 0;
    for (const auto& ep : buffer.finished) sum += ep.agents[i].extrinsic_return;
    returns.push_back(sum / static_cast<double>(buffer.finished.size()));
  }
  Json j = {{"type", "update"},
            {"epoch", epoch},
            {"update", s.update_index},
            {"env_steps", s.env_steps},
            {"policy_loss", r.policy_loss},
            {"value_loss", r.value_loss},
            {"entropy", r.entropy},
            {"clip_fraction", r.clip_fraction},
            {"approx_kl", r.approx_kl},
            {"optimizer_steps", r.optimizer_steps},
            {"episodes_finished", buffer.finished.size()},
            {"agent_returns", returns}};
  if (r.moa_loss != 0) j["moa_loss"] = r.moa_loss;
  if (r.world_model_loss != 0) j["world_model_loss"] = r.world_model_loss;
  return j;
}

int64_t NewestCheckpointEpoch(const fs::path& out_dir) {
  const fs::path dir = out_dir / "checkpoints";
  int64_t newest = 0;
  if (!fs::exists(dir)) return 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    long long epoch = 0;
    char tail[8] = {0};
    if (std::sscanf(name.c_str(), "epoch_%lld.%7s", &epoch, tail) == 2 &&
        std::string(tail) == "ckpt") {
      newest = std::max<int64_t>(newest, epoch);
    }
  }
  return newest;
}

void Truncate(const fs::path& path, uint64_t bytes) {
  if (!fs::exists(path)) {
    if (bytes == 0) return;
    throw ConfigError("training log missing; cannot resume");
  }
  if (fs::file_size(path) < bytes) throw ConfigError("training log shorter than the checkpoint");
  fs::resize_file(path, bytes);
}

}  // namespace

fs::path EpochCheckpointPath(const fs::path& out_dir, int64_t epoch) {
  char name[32];
  std::snprintf(name, sizeof(name), "epoch_%04lld.ckpt", static_cast<long long>(epoch));
  return out_dir / "checkpoints" / name;
}

LoadedRun LoadRunCheckpoint(const fs::path& path) {
  nn::Checkpoint ck = nn::LoadCheckpoint(path.string());
  LoadedRun run;
  try {
    run.meta = Json::parse(ck.meta);
  } catch (const Json::exception& e) {
    throw ConfigError("checkpoint " + path.string() + " has unreadable metadata");
  }
  if (!run.meta.contains("config")) {
    throw ConfigError("checkpoint " + path.string() + " carries no run config");
  }
  run.config = RunConfigFromJson(run.meta.at("config"));
  if (ConfigDigest(run.config) != run.meta.value("config_digest", "")) {
    throw ConfigError("checkpoint " + path.string() + " config digest mismatch");
  }
  run.env = std::make_unique<envs::Environment>(run.config.env);
  run.population =
      std::make_unique<ppo::Population>(MakePopulationConfig(run.config, *run.env));
  run.population->RestoreFrom(ck);
  return run;
}

TrainResult Train(const RunConfig& config, const TrainOptions& options) {
  config.Validate();
  if (options.out_dir.empty()) throw ConfigError("no output directory");
  const fs::path out = options.out_dir;
  const fs::path log = out / kLogName;
  auto say = [&](const std::string& line) {
    if (options.progress) options.progress(line);
  };

  envs::Environment env(config.env);
  ppo::Population pop(MakePopulationConfig(config, env));
  ppo::Collector collector(pop, env, config.seed);
  RunState state;

  const int64_t resume_epoch = options.resume ? NewestCheckpointEpoch(out) : 0;
  if (resume_epoch > 0) {
    const fs::path ckpt = EpochCheckpointPath(out, resume_epoch);
    nn::Checkpoint ck = nn::LoadCheckpoint(ckpt.string());
    const Json meta = Json::parse(ck.meta);
    if (meta.at("config_digest").get<std::string>() != ConfigDigest(config)) {
      throw ConfigError("cannot resume: " + ckpt.string() + " was written under another config");
    }
    pop.RestoreFrom(ck);
    collector.Restore(CollectorSnapshotFromJson(meta.at("collector"), env.map_ptr()));
    state.epoch = meta.at("epoch").get<int64_t>();
    state.env_steps = meta.at("env_steps").get<int64_t>();
    state.update_index = meta.at("update_index").get<uint64_t>();
    state.best_epoch = meta.at("best_epoch").get<int64_t>();
    state.best_return = meta.at("best_return").get<double>();
    state.log_bytes = meta.at("log_bytes").get<uint64_t>();
    Truncate(log, state.log_bytes);
    say("resumed from " + ckpt.string());
  } else {
    if (fs::exists(log)) {
      throw ConfigError(out.string() + " already holds a run; use --resume or a new directory");
    }
    fs::create_directories(out / "checkpoints");
    WriteTextFile(out / "config.json", RunConfigToJson(config).dump(2) + "\n");
  }

  const std::vector<uint64_t> eval_seeds = EvaluationSeeds(config);
  TrainResult result;
  const int64_t epochs = config.num_epochs();
  while (state.epoch < epochs) {
    if (options.stop_after_epochs > 0 && state.epoch >= options.stop_after_epochs) break;
    const int64_t epoch = state.epoch + 1;
    int64_t done = 0;
    while (done < config.epoch_steps) {
      const int horizon =
          static_cast<int>(std::min<int64_t>(config.ppo.rollout_horizon, config.epoch_steps - done));
      ppo::RolloutBuffer buffer = collector.Collect(horizon);
      done += horizon;
      state.env_steps += horizon;
      const ppo::UpdateTargets targets = ppo::ComputeTargets(buffer, config.ppo);
      const ppo::UpdateReport report =
          ppo::PpoUpdate(pop, buffer, targets, config.ppo, {{}, state.update_index});
      if (report.aborted || !pop.AllFinite()) {
        const std::string reason = report.aborted ? report.abort_reason : "non-finite parameters";
        AppendRecord(log, {{"type", "abort"},
                           {"epoch", epoch},
                           {"update", state.update_index},
                           {"env_steps", state.env_steps},
                           {"reason", reason}});
        SaveRun(out / "checkpoints" / "abort.ckpt", pop, MetaFor(config, state, collector));
        throw NumericalAbort("training aborted at update " + std::to_string(state.update_index) +
                             " (epoch " + std::to_string(epoch) + "): " + reason +
                             "; state saved to " + (out / "checkpoints" / "abort.ckpt").string());
      }
      state.log_bytes = AppendRecord(log, UpdateRecord(state, epoch, report, buffer));
      ++state.update_index;
    }

    const EvaluationResult eval =
        Evaluate(pop, env, config, eval_seeds, config.eval_selection, options.eval_threads);
    EpochRecord rec;
    rec.epoch = epoch;
    rec.env_steps = state.env_steps;
    rec.eval_mean_return = eval.report.population_return.mean;
    rec.eval_return_se = eval.report.population_return.se;
    rec.eval_equity = eval.report.equity.mean;
    if (state.best_epoch == 0 || rec.eval_mean_return > state.best_return) {
      state.best_epoch = epoch;
      state.best_return = rec.eval_mean_return;
    }
    rec.best_epoch = state.best_epoch;
    state.epoch = epoch;
    state.log_bytes = AppendRecord(log, {{"type", "epoch"},
                                         {"epoch", epoch},
                                         {"env_steps", state.env_steps},
                                         {"eval_episodes", eval.logs.size()},
                                         {"eval_mean_return", rec.eval_mean_return},
                                         {"eval_return_se", rec.eval_return_se},
                                         {"eval_equity", rec.eval_equity},
                                         {"best_epoch", state.best_epoch}});
    SaveRun(EpochCheckpointPath(out, epoch), pop, MetaFor(config, state, collector));
    WriteTextFile(out / "best_epoch.json",
                  Json({{"epoch", state.best_epoch},
                        {"eval_mean_return", state.best_return},
                        {"checkpoint", EpochCheckpointPath(out, state.best_epoch)
                                           .lexically_relative(out)
                                           .string()}})
                          .dump(2) +
                      "\n");
    result.epochs.push_back(rec);
    {
      std::ostringstream line;
      line << "epoch " << epoch << "/" << epochs << "  steps " << state.env_steps
           << "  eval return " << rec.eval_mean_return << " +- " << rec.eval_return_se
           << "  equity " << rec.eval_equity << "  best epoch " << state.best_epoch;
      say(line.str());
    }
    if (options.on_epoch && options.on_epoch(rec)) break;
  }

  result.epochs_completed = state.epoch;
  result.env_steps = state.env_steps;
  result.best_epoch = state.best_epoch;
  result.best_return = state.best_return;
  result.finished = state.epoch >= epochs;
  return result;
}

}  // namespace ssdlab::harness
