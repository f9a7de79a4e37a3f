// Copyright 2026 The uavqoe Authors
// SPDX-License-Identifier: Apache-2.0

// The simulation arena: ground users with random-walk mobility, UAVs on a
// discretised 3D grid, equal bandwidth/power sharing inside each cluster and
// the QoE snapshot of the whole network.

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "uavqoe/channel.hpp"
#include "uavqoe/clustering.hpp"
#include "uavqoe/common.hpp"
#include "uavqoe/qoe.hpp"

namespace uavqoe {

/// Integer UAV state: horizontal indices (i, j) and altitude level k.
struct GridCell {
  int i = 0;
  int j = 0;
  int k = 0;
  friend auto operator<=>(const GridCell&, const GridCell&) = default;
};

struct Arena {
  double x_max_m = 1000.0;
  double y_max_m = 1000.0;
  double h_min_m = 50.0;
  double h_max_m = 300.0;
  double step_horizontal_m = 10.0;
  double step_vertical_m = 10.0;
  double timeslot_s = 1.0;
  double horizon_s = 100.0;

  void validate() const;

  [[nodiscard]] int nx() const;
  [[nodiscard]] int ny() const;
  [[nodiscard]] int nz() const;
  [[nodiscard]] std::size_t cell_count() const;
  /// Number of timeslots in the horizon.
  [[nodiscard]] int slots() const;

  [[nodiscard]] bool contains(const GridCell& cell) const;
  [[nodiscard]] Position3 position(const GridCell& cell) const;
  [[nodiscard]] std::size_t index(const GridCell& cell) const;
  [[nodiscard]] GridCell cell(std::size_t index) const;
  /// Nearest grid cell to a horizontal point at altitude `h`.
  [[nodiscard]] GridCell snap(const Point2& p, double h) const;
  /// Altitude level nearest to the middle of [h_min, h_max].
  [[nodiscard]] int mid_level() const;
};

/// The seven flight directions, in a fixed order. kStay is last.
enum class Action : int { kRight, kLeft, kForward, kBackward, kAscend, kDescend, kStay };
inline constexpr int kActionCount = 7;

std::array<int, 3> displacement(Action action);

/// Moves one grid step; a move leaving the arena or altitude band is a no-op.
GridCell step_uav(const GridCell& cell, Action action, const Arena& arena);

struct UserState {
  int id = 0;
  Point2 position;
  double snr_target = 1.0;  // linear
  int profile = 0;          // index into World::profiles
  int cluster = 0;
};

struct UavState {
  int id = 0;
  GridCell cell;
  int cluster = 0;
};

struct MobilityConfig {
  double c_max_mps = 2.0;
  std::uint64_t seed = 1;
};

struct Allocation {
  double bandwidth_hz = 0.0;
  double power_w = 0.0;
};

/// Equal split of one UAV's bandwidth and power over its cluster.
Allocation allocate(std::size_t cluster_size, double bandwidth_hz, double p_max_w);

struct World {
  ChannelParams channel;
  Arena arena;
  std::vector<MosProfile> profiles{MosProfile{}};
  std::vector<UserState> users;
  /// UAV n serves cluster n.
  std::vector<UavState> uavs;
  double bandwidth_hz = 1e6;  // per UAV
  double p_max_w = 0.1;       // per UAV
  MobilityConfig mobility;

  void validate() const;
  [[nodiscard]] int cluster_count() const { return static_cast<int>(uavs.size()); }
  [[nodiscard]] std::vector<int> cluster_members(int cluster) const;
  [[nodiscard]] std::vector<Point2> user_positions() const;
  /// Assigns users to clusters; UAV count follows the partition.
  void apply_partition(const Partition& partition);
  [[nodiscard]] std::vector<GridCell> uav_cells() const;
};

/// Sum MOS of one cluster for a candidate UAV position.
///
/// Holds the member list and allocation of a fixed cluster so repeated
/// evaluations (grid searches, Q-learning rollouts) skip the bookkeeping.
/// Not thread-safe: the evaluation counter is mutated.
class ClusterScorer {
 public:
  ClusterScorer(const World& world, int cluster);

  /// Uses the users' positions stored in the world.
  double mos_at(const Position3& uav);
  /// Uses `positions`, indexed by user index over the whole world.
  double mos_at(const Position3& uav, std::span<const Point2> positions);

  [[nodiscard]] std::size_t size() const { return members_.size(); }
  [[nodiscard]] std::uint64_t evaluations() const { return evaluations_; }
  [[nodiscard]] const Allocation& allocation() const { return allocation_; }

 private:
  const World* world_;
  std::vector<int> members_;
  Allocation allocation_;
  std::uint64_t evaluations_ = 0;
};

struct UserLink {
  int user = 0;
  int cluster = 0;
  double rate_bps = 0.0;
  double snr = 0.0;
  double mos = 0.0;
  bool meets_target = false;
};

struct Snapshot {
  std::vector<UserLink> users;
  std::vector<double> cluster_mos;
  std::vector<double> cluster_rate;
  double total_mos = 0.0;
  double sum_rate = 0.0;
};

/// Snapshot with the UAVs at their stored cells.
Snapshot snapshot_mos(const World& world);
/// Snapshot with the UAVs at `cells` and the users at `positions`.
Snapshot snapshot_mos(const World& world, std::span<const GridCell> cells,
                      std::span<const Point2> positions);

double sum_mos(const World& world);
double sum_rate(const World& world);

/// One random-walk step: direction uniform over the four axes, speed uniform
/// on [0, c_max], clipped at the arena edge. Cluster membership is untouched.
void step_users(std::vector<UserState>& users, const MobilityConfig& mobility, const Arena& arena,
                Rng& rng);

/// Positions per slot, slot 0 being the initial layout; `slots` steps follow.
using UserTrajectory = std::vector<std::vector<Point2>>;
UserTrajectory simulate_users(const World& world, std::uint64_t seed, int slots);

struct RewardScheme {
  double improve = 1.0;
  double equal = -0.1;
  double worsen = -1.0;
};

/// Absolute tolerance under which two MOS values count as equal.
inline constexpr double kRewardTolerance = 1e-12;

double reward(double mos_new, double mos_old, const RewardScheme& scheme = {});

}  // namespace uavqoe
