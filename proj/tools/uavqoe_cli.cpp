// Copyright 2026 The uavqoe Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Every option can also come from an environment
// variable named UAVQOE_<OPTION>, e.g. UAVQOE_SEED=1,2,3.

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "uavqoe/uavqoe.h"

namespace {

struct Options {
  std::string scenario;
  std::string out;
  std::string id = "run";
  std::string algo = "qlearning";
  std::string axis;
  std::vector<double> values;
  std::string seed_list;
  int jobs = 1;
  int episodes = 0;
  double epsilon = -1.0;
  bool timing = false;
  std::string qtable_out;
  std::string qtable_in;

  int users = 100;
  int uavs = 4;
  double x_max = 1000.0;
  double y_max = 1000.0;
  std::uint64_t generate_seed = 1;
};

int report_error(uavqoe_status status) {
  std::fprintf(stderr, "error: %s\n", uavqoe_last_error());
  return static_cast<int>(status);
}

#define UAVQOE_TRY(call)                        \
  do {                                          \
    const uavqoe_status s_ = (call);            \
    if (s_ != UAVQOE_OK) return report_error(s_); \
  } while (0)

void print_report(const uavqoe_report* report) {
  std::printf("%-16s %20s %12s %16s\n", "algorithm", "seed", "sweep", "total_mos");
  for (size_t i = 0; i < uavqoe_report_row_count(report); ++i) {
    std::printf("%-16s %20llu %12g %16.6f\n", uavqoe_report_algorithm(report, i),
                static_cast<unsigned long long>(uavqoe_report_seed(report, i)),
                uavqoe_report_sweep_value(report, i), uavqoe_report_total_mos(report, i));
  }
  const size_t warnings = uavqoe_report_warning_count(report);
  if (warnings > 0) std::printf("%zu warning row(s) written to warnings.csv\n", warnings);
}

// An empty list is passed through so the library reports it.
bool parse_seeds(const std::string& text, std::vector<std::uint64_t>& out) {
  if (text.empty()) return true;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    const std::string token = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::uint64_t value = 0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || end != token.data() + token.size()) return false;
    out.push_back(value);
    if (comma == std::string::npos) return true;
    start = comma + 1;
  }
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using ScenarioPtr = std::unique_ptr<uavqoe_scenario, Deleter<uavqoe_scenario, uavqoe_scenario_free>>;
using ExperimentPtr =
    std::unique_ptr<uavqoe_experiment, Deleter<uavqoe_experiment, uavqoe_experiment_free>>;
using ReportPtr = std::unique_ptr<uavqoe_report, Deleter<uavqoe_report, uavqoe_report_free>>;

int run(const Options& o, uavqoe_mode mode, bool sweep) {
  uavqoe_scenario* raw_scenario = nullptr;
  UAVQOE_TRY(uavqoe_scenario_load(o.scenario.c_str(), &raw_scenario));
  const ScenarioPtr scenario(raw_scenario);

  uavqoe_experiment* raw_exp = nullptr;
  UAVQOE_TRY(uavqoe_experiment_create(mode, o.out.c_str(), &raw_exp));
  const ExperimentPtr exp(raw_exp);
  UAVQOE_TRY(uavqoe_experiment_set_id(exp.get(), o.id.c_str()));
  if (mode == UAVQOE_MODE_DEPLOY) UAVQOE_TRY(uavqoe_experiment_set_algorithms(exp.get(), o.algo.c_str()));
  if (sweep) {
    UAVQOE_TRY(uavqoe_experiment_set_sweep(exp.get(), o.axis.c_str(), o.values.data(), o.values.size()));
  }
  std::vector<std::uint64_t> seeds;
  if (!parse_seeds(o.seed_list, seeds)) {
    std::fprintf(stderr, "error: --seed expects comma-separated non-negative integers\n");
    return static_cast<int>(UAVQOE_VALIDATION_ERROR);
  }
  UAVQOE_TRY(uavqoe_experiment_set_seeds(exp.get(), seeds.data(), seeds.size()));
  UAVQOE_TRY(uavqoe_experiment_set_jobs(exp.get(), o.jobs));
  UAVQOE_TRY(uavqoe_experiment_set_timing(exp.get(), o.timing ? 1 : 0));
  if (o.episodes != 0) UAVQOE_TRY(uavqoe_experiment_set_episodes(exp.get(), o.episodes));
  if (o.epsilon >= 0.0) UAVQOE_TRY(uavqoe_experiment_set_epsilon(exp.get(), o.epsilon));
  if (!o.qtable_out.empty()) UAVQOE_TRY(uavqoe_experiment_set_qtable_export(exp.get(), o.qtable_out.c_str()));
  if (!o.qtable_in.empty()) UAVQOE_TRY(uavqoe_experiment_set_qtable_import(exp.get(), o.qtable_in.c_str()));

  uavqoe_report* raw_report = nullptr;
  UAVQOE_TRY(uavqoe_experiment_run(exp.get(), scenario.get(), &raw_report));
  const ReportPtr report(raw_report);
  if (mode != UAVQOE_MODE_CLUSTER) print_report(report.get());
  return 0;
}

int generate(const Options& o) {
  uavqoe_scenario* scenario = nullptr;
  UAVQOE_TRY(uavqoe_scenario_generate(o.users, o.uavs, o.x_max, o.y_max, o.generate_seed, &scenario));
  const uavqoe_status s = uavqoe_scenario_save(scenario, o.out.c_str());
  uavqoe_scenario_free(scenario);
  if (s != UAVQOE_OK) return report_error(s);
  return 0;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--scenario", o.scenario, "Scenario JSON file")->required()->envname("UAVQOE_SCENARIO");
  cmd->add_option("--out", o.out, "Output directory")->required()->envname("UAVQOE_OUT");
  cmd->add_option("--seed", o.seed_list, "Seeds, comma separated")->required()->envname("UAVQOE_SEED");
  cmd->add_option("--id", o.id, "Experiment id written to every row")->envname("UAVQOE_ID");
  cmd->add_option("--jobs", o.jobs, "Worker threads")->envname("UAVQOE_JOBS");
  cmd->add_flag("--timing", o.timing, "Also write timing.csv")->envname("UAVQOE_TIMING");
}

void add_learning(CLI::App* cmd, Options& o) {
  cmd->add_option("--episodes", o.episodes, "Override Q-learning episodes")->envname("UAVQOE_EPISODES");
  cmd->add_option("--epsilon", o.epsilon, "Override Q-learning epsilon")->envname("UAVQOE_EPSILON");
  cmd->add_option("--qtable-out", o.qtable_out, "Write Q-tables to this directory")
      ->envname("UAVQOE_QTABLE_OUT");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QoE-driven UAV deployment and movement simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", uavqoe_version());
  Options o;

  auto* gen = app.add_subcommand("generate", "Write a scenario with uniformly placed users");
  gen->add_option("--users", o.users, "User count")->envname("UAVQOE_USERS");
  gen->add_option("--uavs", o.uavs, "UAV count")->envname("UAVQOE_UAVS");
  gen->add_option("--x-max", o.x_max, "Arena width in metres")->envname("UAVQOE_X_MAX");
  gen->add_option("--y-max", o.y_max, "Arena depth in metres")->envname("UAVQOE_Y_MAX");
  gen->add_option("--seed", o.generate_seed, "Placement seed")->envname("UAVQOE_SEED");
  gen->add_option("--out", o.out, "Scenario file to write")->required()->envname("UAVQOE_OUT");

  auto* cluster = app.add_subcommand("cluster", "Partition users with GAK-means");
  add_common(cluster, o);

  auto* deploy = app.add_subcommand("deploy", "Static 3D deployment");
  add_common(deploy, o);
  add_learning(deploy, o);
  deploy->add_option("--algo", o.algo, "qlearning, kmeans, igk, exhaustive, random or all")
      ->envname("UAVQOE_ALGO");

  auto* move = app.add_subcommand("move", "Deployment followed by movement with roaming users");
  add_common(move, o);
  add_learning(move, o);
  move->add_option("--qtable-in", o.qtable_in, "Read movement Q-tables instead of training")
      ->envname("UAVQOE_QTABLE_IN");

  auto* sweep = app.add_subcommand("sweep", "Deployment over a parameter sweep");
  add_common(sweep, o);
  add_learning(sweep, o);
  sweep->add_option("--algo", o.algo, "qlearning, kmeans, igk, exhaustive, random or all")
      ->envname("UAVQOE_ALGO");
  sweep->add_option("--axis", o.axis, "power_dbm, users, clusters or episodes")
      ->required()
      ->envname("UAVQOE_AXIS");
  sweep->add_option("--values", o.values, "Sweep values, comma separated")
      ->required()
      ->delimiter(',')
      ->envname("UAVQOE_VALUES");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(UAVQOE_VALIDATION_ERROR);
  }

  if (*gen) return generate(o);
  if (*cluster) return run(o, UAVQOE_MODE_CLUSTER, false);
  if (*deploy) return run(o, UAVQOE_MODE_DEPLOY, false);
  if (*move) return run(o, UAVQOE_MODE_MOVE, false);
  return run(o, UAVQOE_MODE_DEPLOY, true);
}
