// Copyright 2026 The uavqoe Authors
// SPDX-License-Identifier: Apache-2.0

// Experiment runner: clustering, deployment and movement over a grid of
// (sweep value, seed) cells, with CSV output that is byte-identical for
// identical inputs whatever the worker count.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "uavqoe/scenario.hpp"

namespace uavqoe {

enum class Algorithm { kQLearning, kKMeans, kIgk, kExhaustive, kRandom };

std::string_view algorithm_name(Algorithm algorithm);
/// Accepts qlearning, kmeans, igk, exhaustive, random and "all".
std::vector<Algorithm> parse_algorithms(std::string_view list);

enum class SweepAxis { kNone, kPowerDbm, kUsers, kClusters, kEpisodes };

std::string_view axis_name(SweepAxis axis);
SweepAxis parse_axis(std::string_view name);

enum class RunMode {
  kCluster,  // partition only
  kDeploy,   // partition, then every selected deployment algorithm
  kMove,     // Q-learning deployment, then movement against the baselines
};

struct ExperimentSpec {
  std::string id = "run";
  RunMode mode = RunMode::kDeploy;
  std::vector<Algorithm> algorithms{Algorithm::kQLearning};
  SweepAxis axis = SweepAxis::kNone;
  std::vector<double> sweep_values;
  std::vector<std::uint64_t> seeds;
  std::string output_dir;
  int jobs = 1;
  bool timing = false;
  /// Overrides of the scenario's Q-learning settings; negative means keep.
  int episodes = -1;
  double epsilon = -1.0;
  /// Q-table CSVs are written here when set.
  std::string qtable_out_dir;
  /// Movement policies are read from here instead of trained when set.
  std::string qtable_in_dir;

  void validate() const;
};

struct ReportRow {
  std::uint64_t seed = 0;
  double sweep_value = 0.0;
  std::string algorithm;
  double total_mos = 0.0;
  std::vector<double> cluster_mos;
  double sum_rate = 0.0;
  std::uint64_t evaluations = 0;
  std::uint64_t position_evaluations = 0;
  double wall_clock_s = 0.0;
  /// Movement rows: slots at which the trace is at least the static trace.
  int slots_at_least_static = -1;
};

struct RunReport {
  std::vector<ReportRow> rows;
  std::size_t warnings = 0;
};

/// Runs every (sweep value, seed) cell and writes the CSV files into
/// spec.output_dir (created if needed). Rows come out in sweep-major,
/// seed-minor order.
RunReport run_experiment(const Scenario& scenario, const ExperimentSpec& spec);

/// Scenario with one sweep value applied.
Scenario apply_sweep(const Scenario& scenario, SweepAxis axis, double value);

}  // namespace uavqoe
