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

// Command-line entry point:
//   ssdlab train    --config <file> [--out <dir>] [--resume] [--stop-after-epochs N]
//   ssdlab evaluate --ckpt <file> [--episodes N] [--seeds S...] [--out <dir>]
//   ssdlab analyze  --logs <glob>... [--out <dir>] [--force]
//   ssdlab render   --log <file> --mode ascii|ppm --stride N [--out <dir>]
//   ssdlab defaults --variant <name> --env <name>
// Output directories default to $SSDLAB_OUT_ROOT (else ./ssdlab_out).
// Exit codes: 0 success, 1 other failure, 2 config error, 3 numerical abort.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ssdlab/common/error.h"
#include "ssdlab/harness/analyze.h"
#include "ssdlab/harness/episode_log.h"
#include "ssdlab/harness/evaluate.h"
#include "ssdlab/harness/render.h"
#include "ssdlab/harness/run_config.h"
#include "ssdlab/harness/train.h"

namespace fs = std::filesystem;
using namespace ssdlab;
using namespace ssdlab::harness;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

fs::path OutputRoot() {
  const char* root = std::getenv("SSDLAB_OUT_ROOT");
  return (root != nullptr && *root != '\0') ? fs::path(root) : fs::path("ssdlab_out");
}

struct TrainArgs {
  std::string config;
  std::string out;
  bool resume = false;
  int64_t stop_after = 0;
  int threads = 0;
  bool quiet = false;
};

int RunTrain(const TrainArgs& a) {
  const RunConfig config = LoadRunConfig(a.config);
  TrainOptions opt;
  opt.out_dir = a.out.empty()
                    ? OutputRoot() / (VariantName(config.variant) + "_" + config.env.name + "_s" +
                                      std::to_string(config.seed))
                    : fs::path(a.out);
  opt.resume = a.resume;
  opt.stop_after_epochs = a.stop_after;
  opt.eval_threads = a.threads;
  if (!a.quiet) opt.progress = [](const std::string& line) { std::cerr << line << std::endl; };
  const TrainResult r = Train(config, opt);
  std::cout << "run directory: " << opt.out_dir.string() << "\n"
            << "epochs completed: " << r.epochs_completed << "/" << config.num_epochs() << "\n"
            << "env steps: " << r.env_steps << "\n"
            << "best epoch: " << r.best_epoch << " (eval return " << r.best_return << ")\n";
  return kExitOk;
}

struct EvalArgs {
  std::string ckpt;
  std::string config;
  int episodes = 0;
  std::vector<uint64_t> seeds;
  std::string out;
  bool argmax = false;
  int threads = 0;
};

int RunEvaluate(const EvalArgs& a) {
  LoadedRun run = LoadRunCheckpoint(a.ckpt);
  if (!a.config.empty()) {
    const RunConfig expected = LoadRunConfig(a.config);
    if (ConfigDigest(expected) != ConfigDigest(run.config)) {
      throw ConfigError("checkpoint " + a.ckpt + " was trained under config " +
                        ConfigDigest(run.config) + ", not " + ConfigDigest(expected) + " (" +
                        a.config + ")");
    }
  }
  const int episodes = a.episodes > 0 ? a.episodes : run.config.eval_episodes;
  std::vector<uint64_t> seeds;
  if (a.seeds.empty()) {
    seeds = EvaluationSeeds(run.config);
    if (static_cast<int>(seeds.size()) != episodes) {
      seeds = DerivedEvaluationSeeds(run.config.seed, episodes);
    }
  } else if (static_cast<int>(a.seeds.size()) == episodes) {
    seeds = a.seeds;
  } else if (a.seeds.size() == 1) {
    seeds = DerivedEvaluationSeeds(a.seeds[0], episodes);
  } else {
    throw ConfigError("--seeds must give one seed per episode or a single base seed");
  }
  const auto selection = a.argmax ? ppo::ActionSelection::kArgmax : run.config.eval_selection;
  const fs::path out =
      a.out.empty() ? OutputRoot() / ("eval_" + ConfigDigest(run.config)) : fs::path(a.out);
  fs::create_directories(out);
  const EvaluationResult r =
      Evaluate(*run.population, *run.env, run.config, seeds, selection, a.threads);
  for (size_t e = 0; e < r.logs.size(); ++e) {
    WriteEpisodeLog(r.logs[e], out / ("episode_" + std::to_string(e) + ".jsonl"));
  }
  Analyze(r.logs, out);
  std::cout << "episodes: " << r.logs.size() << "\n"
            << "mean population return: " << r.report.population_return.mean << " +- "
            << r.report.population_return.se << " (SE)\n"
            << "equity: " << r.report.equity.mean << " +- " << r.report.equity.se << "\n"
            << "output: " << out.string() << "\n";
  return kExitOk;
}

struct AnalyzeArgs {
  std::vector<std::string> logs;
  std::string out;
  bool force = false;
  bool joint = false;
};

int RunAnalyze(const AnalyzeArgs& a) {
  std::vector<EpisodeLog> logs;
  for (const auto& pattern : a.logs) {
    const auto paths = ExpandGlob(pattern);
    if (paths.empty()) throw ConfigError("no files match '" + pattern + "'");
    for (const auto& p : paths) logs.push_back(ReadEpisodeLog(p));
  }
  const fs::path out = a.out.empty() ? OutputRoot() / "analysis" : fs::path(a.out);
  const AnalysisResult r = Analyze(logs, out, {a.force, a.joint});
  std::cout << "logs: " << logs.size() << ", populations: " << r.populations.size() << "\n";
  for (const auto& f : r.files) std::cout << "wrote " << f.string() << "\n";
  return kExitOk;
}

struct RenderArgs {
  std::string log;
  std::string mode = "ascii";
  int stride = 1;
  std::string out;
};

int RunRender(const RenderArgs& a) {
  const RenderMode mode = ParseRenderMode(a.mode);
  const EpisodeLog log = ReadEpisodeLog(a.log);
  const fs::path out = a.out.empty()
                           ? OutputRoot() / ("render_" + fs::path(a.log).stem().string())
                           : fs::path(a.out);
  const RenderResult r = RenderLog(log, mode, a.stride, out);
  std::cout << "frames: " << r.files.size() << " in " << out.string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ssdlab: sequential social dilemma training and analysis"};
  app.require_subcommand(1);

  TrainArgs train;
  auto* t = app.add_subcommand("train", "train a population");
  t->add_option("--config", train.config, "run config (JSON)")->required();
  t->add_option("--out", train.out, "run directory");
  t->add_flag("--resume", train.resume, "continue from the newest checkpoint in --out");
  t->add_option("--stop-after-epochs", train.stop_after, "stop after this many epochs in total");
  t->add_option("--eval-threads", train.threads, "evaluation worker threads (0: all cores)");
  t->add_flag("--quiet", train.quiet, "no progress output");

  EvalArgs eval;
  auto* e = app.add_subcommand("evaluate", "evaluate a checkpoint");
  e->add_option("--ckpt", eval.ckpt, "checkpoint file")->required();
  e->add_option("--config", eval.config, "refuse unless the checkpoint matches this config");
  e->add_option("--episodes", eval.episodes, "number of episodes (default: from config)");
  e->add_option("--seeds", eval.seeds, "one seed per episode, or one base seed");
  e->add_option("--out", eval.out, "output directory");
  e->add_flag("--argmax", eval.argmax, "greedy actions instead of sampling");
  e->add_option("--threads", eval.threads, "worker threads (0: all cores)");

  AnalyzeArgs analyze;
  auto* an = app.add_subcommand("analyze", "population, role and correlation tables");
  an->add_option("--logs", analyze.logs, "episode log glob(s)")->required();
  an->add_option("--out", analyze.out, "output directory");
  an->add_flag("--force", analyze.force, "allow mixed environments / population sizes");
  an->add_flag("--joint-roles", analyze.joint, "z-score roles across all populations");

  RenderArgs render;
  auto* r = app.add_subcommand("render", "replay an episode log into frames");
  r->add_option("--log", render.log, "episode log")->required();
  r->add_option("--mode", render.mode, "ascii or ppm")->check(CLI::IsMember({"ascii", "ppm"}));
  r->add_option("--stride", render.stride, "steps between frames")->check(CLI::PositiveNumber);
  r->add_option("--out", render.out, "output directory");

  std::string variant = "ippo", env = "cleanup";
  auto* d = app.add_subcommand("defaults", "print the default config of a variant");
  d->add_option("--variant", variant, "ippo, mappo, icm, icm_reward, influence, svo_he, svo_ho");
  d->add_option("--env", env, "cleanup, harvest, cleanup_small, harvest_small");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (t->parsed()) return RunTrain(train);
    if (e->parsed()) return RunEvaluate(eval);
    if (an->parsed()) return RunAnalyze(analyze);
    if (r->parsed()) return RunRender(render);
    if (d->parsed()) {
      std::cout << RunConfigToJson(DefaultRunConfig(ParseVariant(variant), env)).dump(2) << "\n";
      return kExitOk;
    }
  } catch (const ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return kExitConfig;
  } catch (const NumericalAbort& err) {
    std::cerr << "numerical abort: " << err.what() << "\n";
    return kExitNumerical;
  } catch (const ReplayDivergence& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
