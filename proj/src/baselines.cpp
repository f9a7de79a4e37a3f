// Copyright 2026 The uavqoe Authors
// SPDX-License-Identifier: Apache-2.0

#include "uavqoe/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <string>

namespace uavqoe {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void finish(const World& world, BaselineResult& result) {
  World placed = world;
  placed.apply_partition(result.partition);
  for (std::size_t n = 0; n < result.positions.size(); ++n) placed.uavs[n].cell = result.positions[n];
  const Snapshot snap = snapshot_mos(placed);
  result.cluster_mos = snap.cluster_mos;
  result.total_mos = snap.total_mos;
}

struct AltitudeChoice {
  int level = 0;
  double mos = 0.0;
};

// Best altitude level above a fixed horizontal cell; ties to the lowest level.
AltitudeChoice best_altitude(const World& world, ClusterScorer& scorer, GridCell cell,
                             std::span<const Point2> positions, std::uint64_t& scored) {
  AltitudeChoice best{0, -1.0};
  for (int k = 0; k < world.arena.nz(); ++k) {
    cell.k = k;
    const double v = scorer.mos_at(world.arena.position(cell), positions);
    ++scored;
    if (v > best.mos) best = {k, v};
  }
  return best;
}

Point2 centroid_of(std::span<const Point2> positions, const std::vector<int>& members) {
  Point2 c;
  for (const int u : members) {
    c.x += positions[static_cast<std::size_t>(u)].x;
    c.y += positions[static_cast<std::size_t>(u)].y;
  }
  const auto n = static_cast<double>(members.size());
  return {c.x / n, c.y / n};
}

}  // namespace

Partition current_partition(const World& world) {
  Partition p;
  const auto positions = world.user_positions();
  for (const auto& u : world.users) p.assignments.push_back(u.cluster);
  for (int c = 0; c < world.cluster_count(); ++c) {
    const auto members = world.cluster_members(c);
    p.centroids.push_back(members.empty() ? Point2{} : centroid_of(positions, members));
  }
  return p;
}

BaselineResult kmeans_deploy(const World& world, std::uint64_t seed) {
  const auto start = Clock::now();
  const auto positions = world.user_positions();
  BaselineResult result;
  result.algorithm = "kmeans";
  // Lloyd from the world's partition keeps every algorithm on the same
  // clusters; a world without a usable partition gets a fresh seeded run.
  bool partitioned = world.cluster_count() > 0;
  for (int c = 0; partitioned && c < world.cluster_count(); ++c) {
    partitioned = !world.cluster_members(c).empty();
  }
  ClusterResult clusters = partitioned ? kmeans_from(positions, current_partition(world).centroids)
                                       : kmeans(positions, std::max(world.cluster_count(), 1), seed);
  result.evaluations = clusters.distance_evaluations;
  result.partition = std::move(clusters.partition);
  const int mid = world.arena.mid_level();
  for (const auto& c : result.partition.centroids) {
    GridCell cell = world.arena.snap(c, 0.0);
    cell.k = mid;
    result.positions.push_back(cell);
  }
  finish(world, result);
  result.evaluations += world.users.size();
  result.position_evaluations = result.positions.size();
  result.wall_clock_s = seconds_since(start);
  return result;
}

BaselineResult igk_deploy(const World& world, const GaConfig& ga) {
  const auto start = Clock::now();
  const auto positions = world.user_positions();
  const int clusters = world.cluster_count();
  BaselineResult result;
  result.algorithm = "igk";

  ClusterResult partition = gak_means(positions, clusters, ga);
  result.evaluations = partition.distance_evaluations;

  World placed = world;
  placed.apply_partition(partition.partition);
  const int mid = world.arena.mid_level();
  std::vector<GridCell> cells;
  double previous = 0.0;
  for (const auto& c : partition.partition.centroids) {
    GridCell cell = world.arena.snap(c, 0.0);
    cell.k = mid;
    cells.push_back(cell);
  }
  previous = snapshot_mos(placed, cells, positions).total_mos;
  result.evaluations += world.users.size();

  for (int iter = 0; iter < kIgkMaxIterations; ++iter) {
    if (iter > 0) {
      // Partition step: Lloyd refinement from the current horizontal
      // positions of the UAVs.
      std::vector<Point2> seeds;
      for (const auto& cell : cells) {
        const Position3 p = world.arena.position(cell);
        seeds.push_back({p.x, p.y});
      }
      ClusterResult refined = kmeans_from(positions, std::move(seeds));
      result.evaluations += refined.distance_evaluations;
      partition = std::move(refined);
      placed.apply_partition(partition.partition);
    }
    std::vector<GridCell> next;
    double total = 0.0;
    for (int c = 0; c < clusters; ++c) {
      ClusterScorer scorer(placed, c);
      if (scorer.size() == 0) {
        next.push_back(cells[static_cast<std::size_t>(c)]);
        continue;
      }
      GridCell cell = world.arena.snap(partition.partition.centroids[static_cast<std::size_t>(c)], 0.0);
      const AltitudeChoice best =
          best_altitude(world, scorer, cell, positions, result.position_evaluations);
      result.evaluations += scorer.evaluations();
      cell.k = best.level;
      next.push_back(cell);
      total += best.mos;
    }
    if (total < previous) break;  // keep the better, earlier placement
    const double gain = total - previous;
    cells = std::move(next);
    result.partition = partition.partition;
    result.iteration_mos.push_back(total);
    previous = total;
    if (gain < kIgkTolerance) break;
  }
  if (result.partition.assignments.empty()) result.partition = partition.partition;
  result.positions = cells;
  finish(world, result);
  result.wall_clock_s = seconds_since(start);
  return result;
}

BaselineResult exhaustive_deploy(const World& world, int cluster, std::uint64_t cap) {
  const auto start = Clock::now();
  const std::size_t cells = world.arena.cell_count();
  if (cells > cap) {
    throw ValidationError("exhaustive search needs " + std::to_string(cells) +
                          " grid cells per cluster but the cap is " + std::to_string(cap) +
                          "; raise the cap to at least " + std::to_string(cells));
  }
  ClusterScorer scorer(world, cluster);
  require(scorer.size() > 0, "exhaustive_deploy: cluster is empty");
  BaselineResult result;
  result.algorithm = "exhaustive";
  result.partition = current_partition(world);
  GridCell best_cell;
  double best = -1.0;
  for (std::size_t idx = 0; idx < cells; ++idx) {
    const GridCell cell = world.arena.cell(idx);
    const double v = scorer.mos_at(world.arena.position(cell));
    if (v > best) {
      best = v;
      best_cell = cell;
    }
  }
  result.positions = {best_cell};
  result.cluster_mos = {best};
  result.total_mos = best;
  result.position_evaluations = cells;
  result.evaluations = scorer.evaluations();
  result.wall_clock_s = seconds_since(start);
  return result;
}

BaselineResult exhaustive_deploy_all(const World& world, std::uint64_t cap) {
  const auto start = Clock::now();
  BaselineResult result;
  result.algorithm = "exhaustive";
  result.partition = current_partition(world);
  for (int c = 0; c < world.cluster_count(); ++c) {
    const BaselineResult one = exhaustive_deploy(world, c, cap);
    result.positions.push_back(one.positions.front());
    result.position_evaluations += one.position_evaluations;
    result.evaluations += one.evaluations;
  }
  finish(world, result);
  result.wall_clock_s = seconds_since(start);
  return result;
}

BaselineResult random_deploy(const World& world, std::uint64_t seed) {
  const auto start = Clock::now();
  BaselineResult result;
  result.algorithm = "random";
  result.partition = current_partition(world);
  Rng rng(seed);
  for (int c = 0; c < world.cluster_count(); ++c) {
    result.positions.push_back(world.arena.cell(rng.index(world.arena.cell_count())));
  }
  finish(world, result);
  result.position_evaluations = result.positions.size();
  result.evaluations = world.users.size();
  result.wall_clock_s = seconds_since(start);
  return result;
}

MovementTrace static_movement_baseline(const World& world, std::span<const GridCell> positions,
                                       std::uint64_t trajectory_seed) {
  require(positions.size() == world.uavs.size(), "static baseline: one position per UAV is required");
  const int slots = world.arena.slots();
  const UserTrajectory users = simulate_users(world, trajectory_seed, slots);
  std::vector<std::vector<GridCell>> cells(static_cast<std::size_t>(slots) + 1,
                                           std::vector<GridCell>(positions.begin(), positions.end()));
  return trace_positions(world, std::move(cells), users);
}

MovementTrace igk_movement_baseline(const World& world, std::span<const GridCell> positions,
                                    std::uint64_t trajectory_seed, std::uint64_t cap) {
  require(positions.size() == world.uavs.size(), "igk movement: one position per UAV is required");
  if (world.arena.cell_count() > cap) {
    throw ValidationError("igk movement baseline needs " + std::to_string(world.arena.cell_count()) +
                          " grid cells but the cap is " + std::to_string(cap));
  }
  const int slots = world.arena.slots();
  const UserTrajectory users = simulate_users(world, trajectory_seed, slots);
  std::vector<ClusterScorer> scorers;
  std::vector<std::vector<int>> members;
  for (int c = 0; c < world.cluster_count(); ++c) {
    scorers.emplace_back(world, c);
    members.push_back(world.cluster_members(c));
  }

  std::vector<std::vector<GridCell>> cells;
  cells.emplace_back(positions.begin(), positions.end());
  std::uint64_t scored = 0;
  for (int t = 1; t <= slots; ++t) {
    const auto& now = users[static_cast<std::size_t>(t)];
    std::vector<GridCell> row = cells.back();
    for (std::size_t c = 0; c < row.size(); ++c) {
      GridCell target = world.arena.snap(centroid_of(now, members[c]), 0.0);
      target.k = best_altitude(world, scorers[c], target, now, scored).level;
      // One step per slot along the axis with the largest remaining gap.
      const int di = target.i - row[c].i;
      const int dj = target.j - row[c].j;
      const int dk = target.k - row[c].k;
      Action action = Action::kStay;
      if (di != 0 && std::abs(di) >= std::abs(dj) && std::abs(di) >= std::abs(dk)) {
        action = di > 0 ? Action::kRight : Action::kLeft;
      } else if (dj != 0 && std::abs(dj) >= std::abs(dk)) {
        action = dj > 0 ? Action::kForward : Action::kBackward;
      } else if (dk != 0) {
        action = dk > 0 ? Action::kAscend : Action::kDescend;
      }
      row[c] = step_uav(row[c], action, world.arena);
    }
    cells.push_back(std::move(row));
  }
  return trace_positions(world, std::move(cells), users);
}

}  // namespace uavqoe
