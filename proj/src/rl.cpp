// Copyright 2026 The uavqoe Authors
// SPDX-License-Identifier: Apache-2.0

#include "uavqoe/rl.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "uavqoe/csv.hpp"

namespace uavqoe {

namespace {

constexpr std::uint64_t kField = 0xffff;

std::uint64_t encode(const StateKey& key) {
  return (static_cast<std::uint64_t>(key.slot + 1) & kField) << 48 |
         (static_cast<std::uint64_t>(key.cell.k) & kField) << 32 |
         (static_cast<std::uint64_t>(key.cell.j) & kField) << 16 |
         (static_cast<std::uint64_t>(key.cell.i) & kField);
}

StateKey decode(std::uint64_t code) {
  StateKey key;
  key.cell.i = static_cast<int>(code & kField);
  key.cell.j = static_cast<int>((code >> 16) & kField);
  key.cell.k = static_cast<int>((code >> 32) & kField);
  key.slot = static_cast<int>((code >> 48) & kField) - 1;
  return key;
}

double max_value(const ActionValues& v) { return *std::max_element(v.begin(), v.end()); }

void check_grid(const Arena& arena) {
  require(arena.nx() < static_cast<int>(kField) && arena.ny() < static_cast<int>(kField) &&
              arena.nz() < static_cast<int>(kField),
          "q-learning: grid dimension too large for the state key");
}

// Cluster MOS per grid cell, computed on first use.
class Landscape {
 public:
  Landscape(const World& world, int cluster)
      : arena_(&world.arena),
        scorer_(world, cluster),
        cache_(world.arena.cell_count(), std::numeric_limits<double>::quiet_NaN()) {}

  double operator()(const GridCell& cell) {
    double& slot = cache_[arena_->index(cell)];
    if (std::isnan(slot)) slot = scorer_.mos_at(arena_->position(cell));
    return slot;
  }

  [[nodiscard]] std::uint64_t evaluations() const { return scorer_.evaluations(); }

 private:
  const Arena* arena_;
  ClusterScorer scorer_;
  std::vector<double> cache_;
};

// Cluster MOS per (cell, slot) along a fixed user trajectory.
class MovingLandscape {
 public:
  MovingLandscape(const World& world, int cluster, const UserTrajectory& users)
      : arena_(&world.arena), scorer_(world, cluster), users_(&users) {}

  double operator()(const GridCell& cell, int slot) {
    const std::uint64_t key = encode({cell, slot});
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const double v =
        scorer_.mos_at(arena_->position(cell), (*users_)[static_cast<std::size_t>(slot)]);
    cache_.emplace(key, v);
    return v;
  }

 private:
  const Arena* arena_;
  ClusterScorer scorer_;
  const UserTrajectory* users_;
  std::unordered_map<std::uint64_t, double> cache_;
};

}  // namespace

void QLearnConfig::validate() const {
  require(learning_rate >= 0.0 && learning_rate <= 1.0, "q-learning: learning rate must be in [0, 1]");
  require(discount >= 0.0 && discount < 1.0, "q-learning: discount must be in [0, 1)");
  require(epsilon >= 0.0 && epsilon <= 1.0, "q-learning: epsilon must be in [0, 1]");
  require(episodes >= 1, "q-learning: episodes must be >= 1");
  require(max_steps_per_episode >= 1, "q-learning: max steps per episode must be >= 1");
  require(warmup_episodes >= 0, "q-learning: warm-up episodes must be >= 0");
}

double QLearnConfig::epsilon_at(int episode) const {
  if (!epsilon_decay) return epsilon;
  return epsilon * (1.0 - static_cast<double>(episode) / static_cast<double>(episodes));
}

const ActionValues& QTable::values(const StateKey& key) const {
  static const ActionValues kZero{};
  auto it = table_.find(encode(key));
  return it == table_.end() ? kZero : it->second;
}

ActionValues& QTable::at(const StateKey& key) { return table_[encode(key)]; }

bool QTable::contains(const StateKey& key) const { return table_.contains(encode(key)); }

std::vector<std::pair<StateKey, ActionValues>> QTable::entries() const {
  std::vector<std::pair<std::uint64_t, ActionValues>> raw(table_.begin(), table_.end());
  std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<StateKey, ActionValues>> out;
  out.reserve(raw.size());
  for (const auto& [code, values] : raw) out.emplace_back(decode(code), values);
  return out;
}

void QTable::write_csv(std::ostream& out) const {
  out << "i,j,k,slot,q0,q1,q2,q3,q4,q5,q6\n";
  for (const auto& [key, values] : entries()) {
    out << key.cell.i << ',' << key.cell.j << ',' << key.cell.k << ',' << key.slot;
    for (const double v : values) out << ',' << format_double_exact(v);
    out << '\n';
  }
}

QTable QTable::read_csv(std::istream& in) {
  QTable table;
  std::string line;
  int line_no = 0;
  if (!std::getline(in, line)) throw ValidationError("q-table csv: missing header");
  ++line_no;
  require(line == "i,j,k,slot,q0,q1,q2,q3,q4,q5,q6", "q-table csv: unexpected header");
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    require(fields.size() == 11, "q-table csv line " + std::to_string(line_no) + ": expected 11 fields");
    try {
      StateKey key{{std::stoi(fields[0]), std::stoi(fields[1]), std::stoi(fields[2])},
                   std::stoi(fields[3])};
      require(key.cell.i >= 0 && key.cell.j >= 0 && key.cell.k >= 0 && key.slot >= -1,
              "negative index");
      ActionValues& values = table.at(key);
      for (std::size_t a = 0; a < values.size(); ++a) values[a] = std::stod(fields[4 + a]);
    } catch (const std::exception& e) {
      throw ValidationError("q-table csv line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return table;
}

double q_update(double q, double r, double max_next, const QLearnConfig& config) {
  return (1.0 - config.learning_rate) * q +
         config.learning_rate * (r + config.discount * max_next);
}

Action greedy_action(const ActionValues& values) {
  return static_cast<Action>(std::max_element(values.begin(), values.end()) - values.begin());
}

Action select_action(const ActionValues& values, double epsilon, Rng& rng) {
  const int greedy = static_cast<int>(greedy_action(values));
  if (rng.uniform() >= epsilon) return static_cast<Action>(greedy);
  const int other = static_cast<int>(rng.index(kActionCount - 1));
  return static_cast<Action>(other < greedy ? other : other + 1);
}

AgentDeployment train_deployment_agent(const World& world, int cluster, const QLearnConfig& config) {
  config.validate();
  check_grid(world.arena);
  const Arena& arena = world.arena;
  Landscape landscape(world, cluster);
  Rng rng(mix_seed(config.seed, static_cast<std::uint64_t>(cluster)));

  AgentDeployment agent;
  agent.episode_rewards.reserve(static_cast<std::size_t>(config.episodes));
  GridCell first_start;
  for (int episode = 0; episode < config.episodes; ++episode) {
    const double epsilon = config.epsilon_at(episode);
    GridCell state = arena.cell(rng.index(arena.cell_count()));
    if (episode == 0) first_start = state;
    double current = landscape(state);
    double total = 0.0;
    for (int step = 0; step < config.max_steps_per_episode; ++step) {
      ActionValues& q = agent.table.at({state, -1});
      const Action action = select_action(q, epsilon, rng);
      const GridCell next = step_uav(state, action, arena);
      const double next_mos = landscape(next);
      const double r = reward(next_mos, current, config.reward);
      const double target = max_value(agent.table.values({next, -1}));
      double& entry = q[static_cast<std::size_t>(action)];
      entry = q_update(entry, r, target, config);
      total += r;
      state = next;
      current = next_mos;
    }
    agent.steps += static_cast<std::uint64_t>(config.max_steps_per_episode);
    agent.episode_rewards.push_back(total);
  }

  // Fly the greedy policy until a state repeats; the repeating tail is the
  // set it settles into.
  std::vector<GridCell> path{first_start};
  std::map<GridCell, std::size_t> seen{{first_start, 0}};
  std::size_t cycle_start = 0;
  for (;;) {
    const GridCell next =
        step_uav(path.back(), greedy_action(agent.table.values({path.back(), -1})), arena);
    auto [it, fresh] = seen.emplace(next, path.size());
    if (!fresh) {
      cycle_start = it->second;
      break;
    }
    path.push_back(next);
  }
  agent.position = path[cycle_start];
  agent.cluster_mos = landscape(agent.position);
  for (std::size_t i = cycle_start + 1; i < path.size(); ++i) {
    const double v = landscape(path[i]);
    if (v > agent.cluster_mos ||
        (v == agent.cluster_mos && arena.index(path[i]) < arena.index(agent.position))) {
      agent.position = path[i];
      agent.cluster_mos = v;
    }
  }
  agent.evaluations = landscape.evaluations();
  return agent;
}

DeploymentResult train_deployment(const World& world, const QLearnConfig& config) {
  DeploymentResult result;
  for (int n = 0; n < world.cluster_count(); ++n) {
    AgentDeployment agent = train_deployment_agent(world, n, config);
    result.positions.push_back(agent.position);
    result.episode_rewards.push_back(std::move(agent.episode_rewards));
    result.tables.push_back(std::move(agent.table));
    result.cluster_mos.push_back(agent.cluster_mos);
    result.total_mos += agent.cluster_mos;
    result.evaluations += agent.evaluations;
    result.steps += agent.steps;
  }
  return result;
}

MovementPolicy train_movement(const World& world, std::span<const GridCell> initial_positions,
                              std::uint64_t trajectory_seed, const QLearnConfig& config) {
  config.validate();
  check_grid(world.arena);
  require(initial_positions.size() == world.uavs.size(),
          "train_movement: one initial position per UAV is required");
  const int slots = world.arena.slots();
  require(slots >= 1, "train_movement: horizon must contain at least one timeslot");
  const UserTrajectory users = simulate_users(world, trajectory_seed, slots);

  MovementPolicy policy;
  policy.slots = slots;
  for (int n = 0; n < world.cluster_count(); ++n) {
    const GridCell origin = initial_positions[static_cast<std::size_t>(n)];
    require(world.arena.contains(origin), "train_movement: initial position outside the grid");
    MovingLandscape landscape(world, n, users);
    Rng rng(mix_seed(config.seed, static_cast<std::uint64_t>(n)));
    QTable table;
    std::vector<double> rewards;
    rewards.reserve(static_cast<std::size_t>(config.episodes));
    for (int episode = 0; episode < config.episodes; ++episode) {
      const double epsilon = episode < config.warmup_episodes ? 1.0 : config.epsilon_at(episode);
      GridCell state = origin;
      double total = 0.0;
      for (int t = 0; t < slots; ++t) {
        ActionValues& q = table.at({state, t});
        const Action action = episode < config.warmup_episodes
                                  ? static_cast<Action>(rng.index(kActionCount))
                                  : select_action(q, epsilon, rng);
        const GridCell next = step_uav(state, action, world.arena);
        const double before = config.movement_reference == MovementReference::kStay
                                  ? landscape(state, t + 1)
                                  : landscape(state, t);
        const double r = reward(landscape(next, t + 1), before, config.reward);
        const double target = t + 1 < slots ? max_value(table.values({next, t + 1})) : 0.0;
        double& entry = q[static_cast<std::size_t>(action)];
        entry = q_update(entry, r, target, config);
        total += r;
        state = next;
      }
      rewards.push_back(total);
    }
    policy.tables.push_back(std::move(table));
    policy.episode_rewards.push_back(std::move(rewards));
  }
  return policy;
}

MovementTrace trace_positions(const World& world, std::vector<std::vector<GridCell>> positions,
                              const UserTrajectory& users) {
  require(positions.size() == users.size(), "trace: one row of positions per slot is required");
  MovementTrace trace;
  trace.positions = std::move(positions);
  for (std::size_t t = 0; t < trace.positions.size(); ++t) {
    const Snapshot snap = snapshot_mos(world, trace.positions[t], users[t]);
    trace.cluster_mos.push_back(snap.cluster_mos);
    trace.total_mos.push_back(snap.total_mos);
    trace.sum_rate.push_back(snap.sum_rate);
    if (t > 0) trace.horizon_mos += snap.total_mos;
  }
  return trace;
}

MovementTrace test_movement(const World& world, std::span<const GridCell> initial_positions,
                            const MovementPolicy& policy, std::uint64_t trajectory_seed) {
  require(initial_positions.size() == world.uavs.size() &&
              policy.tables.size() == world.uavs.size(),
          "test_movement: policy and positions must cover every UAV");
  const UserTrajectory users = simulate_users(world, trajectory_seed, policy.slots);
  std::vector<std::vector<GridCell>> positions;
  positions.emplace_back(initial_positions.begin(), initial_positions.end());
  for (int t = 0; t < policy.slots; ++t) {
    std::vector<GridCell> row = positions.back();
    for (std::size_t n = 0; n < row.size(); ++n) {
      const StateKey key{row[n], t};
      if (!policy.tables[n].contains(key)) continue;
      row[n] = step_uav(row[n], greedy_action(policy.tables[n].values(key)), world.arena);
    }
    positions.push_back(std::move(row));
  }
  return trace_positions(world, std::move(positions), users);
}

}  // namespace uavqoe
