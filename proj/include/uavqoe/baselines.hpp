// Copyright 2026 The uavqoe Authors
// SPDX-License-Identifier: Apache-2.0

// Comparison deployments: K-means placement, Iterative GAK-means (IGK),
// exhaustive grid search, uniform random placement, and the static and
// IGK-tracking movement baselines.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "uavqoe/clustering.hpp"
#include "uavqoe/rl.hpp"
#include "uavqoe/world.hpp"

namespace uavqoe {

struct BaselineResult {
  std::string algorithm;
  std::vector<GridCell> positions;
  /// Partition the positions were evaluated under.
  Partition partition;
  std::vector<double> cluster_mos;
  double total_mos = 0.0;
  double wall_clock_s = 0.0;
  /// Candidate UAV positions scored (one cluster at one cell each).
  std::uint64_t position_evaluations = 0;
  /// User-link MOS evaluations plus clustering distance evaluations.
  std::uint64_t evaluations = 0;
  /// IGK only: total MOS after each outer iteration.
  std::vector<double> iteration_mos;
};

/// Partition currently stored in the world, with centroids of its members.
Partition current_partition(const World& world);

/// Lloyd K-means partition, started from the world's current clusters when
/// every cluster has members and from a seeded Forgy draw otherwise. UAVs sit
/// above the centroids at mid-band altitude.
BaselineResult kmeans_deploy(const World& world, std::uint64_t seed);

inline constexpr int kIgkMaxIterations = 50;
inline constexpr double kIgkTolerance = 1e-6;

/// Alternates a GAK-means partition step with a per-cluster altitude line
/// search, until the total MOS gains less than 1e-6 or 50 iterations.
BaselineResult igk_deploy(const World& world, const GaConfig& ga);

inline constexpr std::uint64_t kDefaultExhaustiveCap = 100000;

/// Best cell for one cluster by scoring every grid cell. Ties go to the
/// lowest cell index. Throws ValidationError when the grid exceeds `cap`.
BaselineResult exhaustive_deploy(const World& world, int cluster,
                                 std::uint64_t cap = kDefaultExhaustiveCap);

/// Per-cluster exhaustive search for every UAV.
BaselineResult exhaustive_deploy_all(const World& world, std::uint64_t cap = kDefaultExhaustiveCap);

/// One uniformly drawn grid cell per UAV.
BaselineResult random_deploy(const World& world, std::uint64_t seed);

/// UAVs frozen at `positions` while users roam.
MovementTrace static_movement_baseline(const World& world, std::span<const GridCell> positions,
                                       std::uint64_t trajectory_seed);

/// Re-solves the IGK horizontal and altitude step every slot, moving at most
/// one grid step per axis-move toward the re-solved target. Refuses grids
/// above `cap` cells.
MovementTrace igk_movement_baseline(const World& world, std::span<const GridCell> positions,
                                    std::uint64_t trajectory_seed,
                                    std::uint64_t cap = kDefaultExhaustiveCap);

}  // namespace uavqoe
