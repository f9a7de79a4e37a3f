// Copyright 2026 The uavqoe Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <tuple>

#include "doctest.h"
#include "uavqoe/csv.hpp"
#include "uavqoe/experiment.hpp"

using namespace uavqoe;
namespace fs = std::filesystem;

namespace {

Scenario small_scenario() {
  GeneratorSpec g;
  g.users = 16;
  g.uavs = 2;
  g.arena.x_max_m = 300;
  g.arena.y_max_m = 300;
  g.arena.step_horizontal_m = 30;
  g.arena.step_vertical_m = 50;
  g.arena.horizon_s = 8;
  g.seed = 3;
  Scenario s = generate_scenario(g);
  s.qlearning.episodes = 60;
  s.qlearning.max_steps_per_episode = 40;
  return s;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("uavqoe_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void check_same_tree(const fs::path& a, const fs::path& b) {
  int files = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    const fs::path other = b / entry.path().filename();
    REQUIRE(fs::exists(other));
    CHECK_MESSAGE(slurp(entry.path()) == slurp(other), entry.path().filename().string());
    ++files;
  }
  CHECK(files > 0);
}

std::vector<std::vector<std::string>> rows_of(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<std::string>> out;
  while (std::getline(in, line)) out.push_back(split_csv_line(line));
  return out;
}

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("experiment settings validation") {
  ExperimentSpec spec;
  spec.output_dir = scratch("empty").string();
  CHECK_THROWS_AS(run_experiment(small_scenario(), spec), ValidationError);
  spec.seeds = {1, 1};
  CHECK_THROWS_AS(run_experiment(small_scenario(), spec), ValidationError);
  CHECK_THROWS_AS(parse_algorithms("qlearning,magic"), ValidationError);
  CHECK_THROWS_AS(parse_axis("colour"), ValidationError);
  CHECK(parse_algorithms("all").size() == 5);
  CHECK(parse_axis("power") == SweepAxis::kPowerDbm);
}

TEST_CASE("identical runs give byte-identical files, serial or parallel") {
  const Scenario s = small_scenario();
  ExperimentSpec spec;
  spec.algorithms = parse_algorithms("all");
  spec.axis = SweepAxis::kPowerDbm;
  spec.sweep_values = {5, 20};
  spec.seeds = {1, 2, 3};
  const fs::path a = scratch("det_a");
  const fs::path b = scratch("det_b");
  const fs::path c = scratch("det_c");
  spec.output_dir = a.string();
  run_experiment(s, spec);
  spec.output_dir = b.string();
  run_experiment(s, spec);
  spec.output_dir = c.string();
  spec.jobs = 4;
  run_experiment(s, spec);
  check_same_tree(a, b);
  check_same_tree(a, c);
}

TEST_CASE("movement runs are deterministic under parallel execution") {
  const Scenario s = small_scenario();
  ExperimentSpec spec;
  spec.mode = RunMode::kMove;
  spec.seeds = {4, 5};
  const fs::path a = scratch("move_a");
  const fs::path b = scratch("move_b");
  spec.output_dir = a.string();
  const RunReport r = run_experiment(s, spec);
  spec.output_dir = b.string();
  spec.jobs = 3;
  run_experiment(s, spec);
  check_same_tree(a, b);
  CHECK(fs::exists(a / "trajectory.csv"));
  int moving = 0;
  for (const auto& row : r.rows) {
    if (row.algorithm == "qlearning-move") {
      ++moving;
      CHECK(row.slots_at_least_static >= 0);
      CHECK(row.slots_at_least_static <= s.world.arena.slots());
    }
  }
  CHECK(moving == 2);
}

TEST_CASE("report totals equal the sum of per-user rows") {
  const Scenario s = small_scenario();
  ExperimentSpec spec;
  spec.algorithms = parse_algorithms("all");
  spec.seeds = {7, 8};
  const fs::path dir = scratch("accounting");
  spec.output_dir = dir.string();
  const RunReport report = run_experiment(s, spec);

  using Key = std::tuple<std::string, std::string, std::string>;
  std::map<Key, double> mos_sum;
  std::map<Key, double> rate_sum;
  std::map<Key, int> users;
  for (const auto& row : rows_of(dir / "per_user.csv")) {
    const Key key{row[1], row[2], row[3]};
    mos_sum[key] += std::stod(row[10]);
    rate_sum[key] += std::stod(row[8]);
    ++users[key];
  }
  const auto report_rows = rows_of(dir / "report.csv");
  CHECK(report_rows.size() == report.rows.size());
  for (const auto& row : report_rows) {
    const Key key{row[1], row[3], row[4]};
    REQUIRE(users.contains(key));
    CHECK(users[key] == 16);
    CHECK(std::abs(mos_sum[key] - std::stod(row[5])) <= 1e-9 * users[key]);
    CHECK(std::abs(rate_sum[key] - std::stod(row[7])) <= 1e-9 * std::stod(row[7]));
  }
  // In memory the identity holds bit for bit.
  for (const auto& row : report.rows) {
    double total = 0;
    for (const double c : row.cluster_mos) total += c;
    CHECK(total == row.total_mos);
  }
}

TEST_CASE("power sweep is monotone for every algorithm") {
  const Scenario s = small_scenario();
  ExperimentSpec spec;
  spec.algorithms = parse_algorithms("kmeans,igk,exhaustive");
  spec.axis = SweepAxis::kPowerDbm;
  spec.sweep_values = {5, 10, 15, 20};
  spec.seeds = {1};
  spec.output_dir = scratch("power").string();
  const RunReport r = run_experiment(s, spec);
  std::map<std::string, double> last;
  for (const auto& row : r.rows) {
    if (last.contains(row.algorithm)) CHECK(row.total_mos >= last[row.algorithm]);
    last[row.algorithm] = row.total_mos;
  }
  CHECK(last.size() == 3);
}

TEST_CASE("sweeps over users, clusters and episodes") {
  const Scenario s = small_scenario();
  CHECK(apply_sweep(s, SweepAxis::kUsers, 5).world.users.size() == 5);
  CHECK(apply_sweep(s, SweepAxis::kClusters, 3).uav_count == 3);
  CHECK(apply_sweep(s, SweepAxis::kEpisodes, 17).qlearning.episodes == 17);
  CHECK(std::abs(apply_sweep(s, SweepAxis::kPowerDbm, 20).world.p_max_w - 0.1) < 1e-15);
  CHECK_THROWS_AS(apply_sweep(s, SweepAxis::kUsers, 500), ValidationError);
}

TEST_CASE("Q-tables can be exported and replayed") {
  const Scenario s = small_scenario();
  ExperimentSpec spec;
  spec.mode = RunMode::kMove;
  spec.seeds = {2};
  const fs::path tables = scratch("qtables");
  const fs::path a = scratch("replay_a");
  const fs::path b = scratch("replay_b");
  spec.qtable_out_dir = tables.string();
  spec.output_dir = a.string();
  run_experiment(s, spec);
  spec.qtable_out_dir.clear();
  spec.qtable_in_dir = tables.string();
  spec.output_dir = b.string();
  run_experiment(s, spec);
  CHECK(slurp(a / "trajectory.csv") == slurp(b / "trajectory.csv"));
}

}  // TEST_SUITE
