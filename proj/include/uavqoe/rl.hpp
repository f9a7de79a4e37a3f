// Copyright 2026 The uavqoe Authors
// SPDX-License-Identifier: Apache-2.0

// Tabular Q-learning agents, one per UAV, for static 3D deployment and for
// per-timeslot movement over a fixed user trajectory.
//
// Every agent learns on its own cluster: clusters use orthogonal spectrum and
// fixed allocations, so the network sum MOS is exactly the sum of cluster sums
// and each agent's reward depends only on its own position.
//
// The constant learning rate used by default does not satisfy the
// square-summable step condition of the classical convergence theorem; it is
// kept because it is the rate the reference experiments use.

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "uavqoe/world.hpp"

namespace uavqoe {

/// What a movement step's MOS is compared against when computing the reward.
enum class MovementReference {
  /// The MOS the UAV would have had by staying put, users already moved.
  kStay,
  /// The MOS of the previous slot, before users and UAV moved.
  kPrevious,
};

struct QLearnConfig {
  double learning_rate = 0.01;
  double discount = 0.7;
  double epsilon = 0.1;
  int episodes = 1000;
  int max_steps_per_episode = 200;
  std::uint64_t seed = 1;
  /// Linearly anneal epsilon to zero over the episodes.
  bool epsilon_decay = false;
  /// Movement training: episodes that pick actions uniformly at random
  /// before epsilon-greedy takes over.
  int warmup_episodes = 0;
  RewardScheme reward;
  MovementReference movement_reference = MovementReference::kStay;

  void validate() const;
  [[nodiscard]] double epsilon_at(int episode) const;
};

/// Deployment states use slot -1; movement states carry the timeslot index.
struct StateKey {
  GridCell cell;
  int slot = -1;
  friend auto operator<=>(const StateKey&, const StateKey&) = default;
};

using ActionValues = std::array<double, kActionCount>;

class QTable {
 public:
  /// Values of a state; unvisited states read as all zeros.
  [[nodiscard]] const ActionValues& values(const StateKey& key) const;
  ActionValues& at(const StateKey& key);
  [[nodiscard]] bool contains(const StateKey& key) const;
  [[nodiscard]] std::size_t size() const { return table_.size(); }

  /// Entries sorted by (slot, k, j, i).
  [[nodiscard]] std::vector<std::pair<StateKey, ActionValues>> entries() const;

  /// CSV with columns i,j,k,slot,q0..q6.
  void write_csv(std::ostream& out) const;
  static QTable read_csv(std::istream& in);

 private:
  std::unordered_map<std::uint64_t, ActionValues> table_;
};

/// One temporal-difference step: (1 - a) q + a (r + b max_next).
double q_update(double q, double r, double max_next, const QLearnConfig& config);

/// Highest-valued action, ties resolved to the lowest action index.
Action greedy_action(const ActionValues& values);

/// Epsilon-greedy: greedy with probability 1 - epsilon, otherwise one of the
/// six other actions uniformly.
Action select_action(const ActionValues& values, double epsilon, Rng& rng);

struct DeploymentResult {
  std::vector<GridCell> positions;
  /// Summed reward per episode, per UAV.
  std::vector<std::vector<double>> episode_rewards;
  std::vector<QTable> tables;
  std::vector<double> cluster_mos;
  double total_mos = 0.0;
  /// User-link MOS evaluations spent on distinct states.
  std::uint64_t evaluations = 0;
  /// Environment steps taken during training.
  std::uint64_t steps = 0;
};

struct AgentDeployment {
  GridCell position;
  std::vector<double> episode_rewards;
  QTable table;
  double cluster_mos = 0.0;
  std::uint64_t evaluations = 0;
  std::uint64_t steps = 0;
};

/// Trains the agent of one cluster. The returned position is the best cell of
/// the set the greedy policy settles into (a fixed point or a cycle) when
/// flown from the first episode's random start.
AgentDeployment train_deployment_agent(const World& world, int cluster, const QLearnConfig& config);

/// Trains one independent agent per UAV; agent n uses stream n of the seed.
DeploymentResult train_deployment(const World& world, const QLearnConfig& config);

struct MovementPolicy {
  std::vector<QTable> tables;
  std::vector<std::vector<double>> episode_rewards;
  int slots = 0;
};

/// Trains on the user trajectory drawn from `trajectory_seed` over the
/// arena's horizon. The reward of a step compares the cluster MOS after the
/// action with the MOS the UAV would have had by staying put, both with the
/// users at their new positions.
MovementPolicy train_movement(const World& world, std::span<const GridCell> initial_positions,
                              std::uint64_t trajectory_seed, const QLearnConfig& config);

struct MovementTrace {
  /// positions[t][n]: UAV n at slot t, t = 0..T.
  std::vector<std::vector<GridCell>> positions;
  /// cluster_mos[t][n] and total_mos[t] for t = 0..T.
  std::vector<std::vector<double>> cluster_mos;
  std::vector<double> total_mos;
  std::vector<double> sum_rate;
  /// Sum of total_mos over slots 1..T.
  double horizon_mos = 0.0;
};

/// Greedy rollout of a trained policy. States the table never saw hold
/// position.
MovementTrace test_movement(const World& world, std::span<const GridCell> initial_positions,
                            const MovementPolicy& policy, std::uint64_t trajectory_seed);

/// Trace of any fixed sequence of per-slot UAV cells against a trajectory.
MovementTrace trace_positions(const World& world, std::vector<std::vector<GridCell>> positions,
                              const UserTrajectory& users);

}  // namespace uavqoe
