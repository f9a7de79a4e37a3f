// Copyright 2026 The uavqoe Authors
// SPDX-License-Identifier: Apache-2.0

// Scenario files: JSON description of the arena, channel, UAV fleet, users
// and algorithm settings.

#pragma once

#include <cstdint>
#include <string>

#include "uavqoe/baselines.hpp"
#include "uavqoe/clustering.hpp"
#include "uavqoe/rl.hpp"
#include "uavqoe/world.hpp"

namespace uavqoe {

struct Scenario {
  /// Users, channel, arena, profiles, mobility and per-UAV budgets. The UAV
  /// list is empty until a partition is applied.
  World world;
  int uav_count = 1;
  GaConfig clustering;
  QLearnConfig qlearning;
  std::uint64_t exhaustive_cap = kDefaultExhaustiveCap;

  void validate() const;
};

/// Parses scenario JSON. Errors carry the line and column for syntax
/// problems and the JSON path of the offending field otherwise.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

/// Canonical JSON with an explicit user list. Linear units are written so
/// parse_scenario(write_scenario(s)) reproduces s exactly.
std::string write_scenario(const Scenario& scenario);

struct GeneratorSpec {
  int users = 100;
  int uavs = 4;
  Arena arena;
  std::uint64_t seed = 1;
};

/// Users uniform over the arena floor, default parameters everywhere else.
Scenario generate_scenario(const GeneratorSpec& spec);

}  // namespace uavqoe
