// Copyright 2026 The uavqoe Authors
// SPDX-License-Identifier: Apache-2.0

#include "uavqoe/world.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace uavqoe {

namespace {

constexpr double kGridEps = 1e-9;

int levels(double extent, double step) {
  return static_cast<int>(std::floor(extent / step + kGridEps)) + 1;
}

UserLink make_link(const World& world, int u, const Position3& uav, const Point2& at,
                   const Allocation& share) {
  const UserState& user = world.users[static_cast<std::size_t>(u)];
  UserLink link;
  link.user = u;
  link.cluster = user.cluster;
  const double g = channel_gain(link_geometry(uav, {at.x, at.y, 0.0}), world.channel);
  link.snr = snr(share.power_w, g, share.bandwidth_hz, world.channel);
  link.rate_bps = rate(share.power_w, g, share.bandwidth_hz, world.channel);
  link.mos = link.rate_bps > 0.0
                 ? mos(link.rate_bps, world.profiles[static_cast<std::size_t>(user.profile)])
                 : kMosMin;
  link.meets_target = link.snr >= user.snr_target;
  return link;
}

}  // namespace

void Arena::validate() const {
  require(x_max_m > 0.0 && y_max_m > 0.0, "arena: extents must be positive");
  require(h_min_m > 0.0 && h_min_m < h_max_m, "arena: need 0 < h_min < h_max");
  require(step_horizontal_m > 0.0 && step_vertical_m > 0.0, "arena: grid steps must be positive");
  require(timeslot_s > 0.0, "arena: timeslot must be positive");
  require(horizon_s > 0.0, "arena: horizon must be positive");
  const double ratio = horizon_s / timeslot_s;
  require(std::abs(ratio - std::round(ratio)) <= 1e-9 * ratio,
          "arena: horizon must be a multiple of the timeslot");
}

int Arena::nx() const { return levels(x_max_m, step_horizontal_m); }
int Arena::ny() const { return levels(y_max_m, step_horizontal_m); }
int Arena::nz() const { return levels(h_max_m - h_min_m, step_vertical_m); }

std::size_t Arena::cell_count() const {
  return static_cast<std::size_t>(nx()) * static_cast<std::size_t>(ny()) *
         static_cast<std::size_t>(nz());
}

int Arena::slots() const { return static_cast<int>(std::lround(horizon_s / timeslot_s)); }

bool Arena::contains(const GridCell& c) const {
  return c.i >= 0 && c.i < nx() && c.j >= 0 && c.j < ny() && c.k >= 0 && c.k < nz();
}

Position3 Arena::position(const GridCell& c) const {
  return {c.i * step_horizontal_m, c.j * step_horizontal_m, h_min_m + c.k * step_vertical_m};
}

std::size_t Arena::index(const GridCell& c) const {
  return (static_cast<std::size_t>(c.k) * static_cast<std::size_t>(ny()) +
          static_cast<std::size_t>(c.j)) *
             static_cast<std::size_t>(nx()) +
         static_cast<std::size_t>(c.i);
}

GridCell Arena::cell(std::size_t index) const {
  const auto sx = static_cast<std::size_t>(nx());
  const auto sy = static_cast<std::size_t>(ny());
  return {static_cast<int>(index % sx), static_cast<int>((index / sx) % sy),
          static_cast<int>(index / (sx * sy))};
}

GridCell Arena::snap(const Point2& p, double h) const {
  auto clamp_index = [](double v, int n) {
    return std::clamp(static_cast<int>(std::lround(v)), 0, n - 1);
  };
  return {clamp_index(p.x / step_horizontal_m, nx()), clamp_index(p.y / step_horizontal_m, ny()),
          clamp_index((h - h_min_m) / step_vertical_m, nz())};
}

int Arena::mid_level() const {
  return snap({0.0, 0.0}, 0.5 * (h_min_m + h_max_m)).k;
}

std::array<int, 3> displacement(Action action) {
  switch (action) {
    case Action::kRight: return {1, 0, 0};
    case Action::kLeft: return {-1, 0, 0};
    case Action::kForward: return {0, 1, 0};
    case Action::kBackward: return {0, -1, 0};
    case Action::kAscend: return {0, 0, 1};
    case Action::kDescend: return {0, 0, -1};
    case Action::kStay: return {0, 0, 0};
  }
  return {0, 0, 0};
}

GridCell step_uav(const GridCell& cell, Action action, const Arena& arena) {
  const auto d = displacement(action);
  const GridCell next{cell.i + d[0], cell.j + d[1], cell.k + d[2]};
  return arena.contains(next) ? next : cell;
}

Allocation allocate(std::size_t cluster_size, double bandwidth_hz, double p_max_w) {
  require(cluster_size > 0, "allocate: cluster is empty");
  const auto n = static_cast<double>(cluster_size);
  return {bandwidth_hz / n, p_max_w / n};
}

void World::validate() const {
  channel.validate();
  arena.validate();
  require(!profiles.empty(), "world: at least one MOS profile is required");
  for (const auto& p : profiles) p.validate();
  require(bandwidth_hz > 0.0, "world: bandwidth must be positive");
  require(p_max_w > 0.0, "world: max transmit power must be positive");
  require(mobility.c_max_mps >= 0.0, "world: c_max must be >= 0");
  require(!uavs.empty(), "world: at least one UAV is required");
  require(users.size() >= uavs.size(), "world: fewer users than UAVs");
  for (const auto& u : users) {
    const std::string who = "user " + std::to_string(u.id) + ": ";
    require(u.position.x >= 0.0 && u.position.x <= arena.x_max_m && u.position.y >= 0.0 &&
                u.position.y <= arena.y_max_m,
            who + "position outside the arena");
    require(u.snr_target > 0.0, who + "SNR target must be positive");
    require(u.profile >= 0 && static_cast<std::size_t>(u.profile) < profiles.size(),
            who + "unknown MOS profile");
    require(u.cluster >= 0 && u.cluster < cluster_count(), who + "cluster index out of range");
  }
  for (const auto& v : uavs) {
    require(arena.contains(v.cell), "uav " + std::to_string(v.id) + ": cell outside the grid");
  }
}

std::vector<int> World::cluster_members(int cluster) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < users.size(); ++i) {
    if (users[i].cluster == cluster) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<Point2> World::user_positions() const {
  std::vector<Point2> out;
  out.reserve(users.size());
  for (const auto& u : users) out.push_back(u.position);
  return out;
}

void World::apply_partition(const Partition& partition) {
  require(partition.assignments.size() == users.size(), "apply_partition: size mismatch");
  for (std::size_t i = 0; i < users.size(); ++i) users[i].cluster = partition.assignments[i];
  const auto n = static_cast<std::size_t>(partition.cluster_count());
  uavs.resize(n);
  for (std::size_t c = 0; c < n; ++c) {
    uavs[c].id = static_cast<int>(c);
    uavs[c].cluster = static_cast<int>(c);
    if (!arena.contains(uavs[c].cell)) uavs[c].cell = {};
  }
}

std::vector<GridCell> World::uav_cells() const {
  std::vector<GridCell> out;
  out.reserve(uavs.size());
  for (const auto& v : uavs) out.push_back(v.cell);
  return out;
}

ClusterScorer::ClusterScorer(const World& world, int cluster)
    : world_(&world), members_(world.cluster_members(cluster)) {
  allocation_ = allocate(members_.size(), world.bandwidth_hz, world.p_max_w);
}

double ClusterScorer::mos_at(const Position3& uav) {
  double total = 0.0;
  for (const int u : members_) {
    total += make_link(*world_, u, uav, world_->users[static_cast<std::size_t>(u)].position,
                       allocation_)
                 .mos;
  }
  evaluations_ += members_.size();
  return total;
}

double ClusterScorer::mos_at(const Position3& uav, std::span<const Point2> positions) {
  double total = 0.0;
  for (const int u : members_) {
    total += make_link(*world_, u, uav, positions[static_cast<std::size_t>(u)], allocation_).mos;
  }
  evaluations_ += members_.size();
  return total;
}

Snapshot snapshot_mos(const World& world) {
  const auto cells = world.uav_cells();
  const auto positions = world.user_positions();
  return snapshot_mos(world, cells, positions);
}

Snapshot snapshot_mos(const World& world, std::span<const GridCell> cells,
                      std::span<const Point2> positions) {
  require(cells.size() == world.uavs.size(), "snapshot: one cell per UAV is required");
  require(positions.size() == world.users.size(), "snapshot: one position per user is required");
  const auto clusters = static_cast<std::size_t>(world.cluster_count());
  std::vector<std::size_t> sizes(clusters, 0);
  for (const auto& u : world.users) {
    require(u.cluster >= 0 && static_cast<std::size_t>(u.cluster) < clusters,
            "snapshot: user " + std::to_string(u.id) + " is not assigned to a cluster");
    ++sizes[static_cast<std::size_t>(u.cluster)];
  }

  Snapshot snap;
  snap.cluster_mos.assign(clusters, 0.0);
  snap.cluster_rate.assign(clusters, 0.0);
  snap.users.reserve(world.users.size());
  for (std::size_t i = 0; i < world.users.size(); ++i) {
    const UserState& user = world.users[i];
    const auto c = static_cast<std::size_t>(user.cluster);
    const Allocation share = allocate(sizes[c], world.bandwidth_hz, world.p_max_w);
    const UserLink link = make_link(world, static_cast<int>(i),
                                    world.arena.position(cells[c]), positions[i], share);
    snap.cluster_mos[c] += link.mos;
    snap.cluster_rate[c] += link.rate_bps;
    snap.users.push_back(link);
  }
  for (std::size_t c = 0; c < clusters; ++c) {
    snap.total_mos += snap.cluster_mos[c];
    snap.sum_rate += snap.cluster_rate[c];
  }
  return snap;
}

double sum_mos(const World& world) { return snapshot_mos(world).total_mos; }
double sum_rate(const World& world) { return snapshot_mos(world).sum_rate; }

void step_users(std::vector<UserState>& users, const MobilityConfig& mobility, const Arena& arena,
                Rng& rng) {
  for (auto& u : users) {
    const auto direction = rng.index(4);
    const double distance = rng.uniform(0.0, mobility.c_max_mps) * arena.timeslot_s;
    switch (direction) {
      case 0: u.position.x += distance; break;
      case 1: u.position.x -= distance; break;
      case 2: u.position.y += distance; break;
      default: u.position.y -= distance; break;
    }
    u.position.x = std::clamp(u.position.x, 0.0, arena.x_max_m);
    u.position.y = std::clamp(u.position.y, 0.0, arena.y_max_m);
  }
}

UserTrajectory simulate_users(const World& world, std::uint64_t seed, int slots) {
  UserTrajectory out;
  out.reserve(static_cast<std::size_t>(slots) + 1);
  std::vector<UserState> users = world.users;
  out.push_back(world.user_positions());
  Rng rng(seed);
  for (int t = 0; t < slots; ++t) {
    step_users(users, world.mobility, world.arena, rng);
    std::vector<Point2> row;
    row.reserve(users.size());
    for (const auto& u : users) row.push_back(u.position);
    out.push_back(std::move(row));
  }
  return out;
}

double reward(double mos_new, double mos_old, const RewardScheme& scheme) {
  if (std::abs(mos_new - mos_old) <= kRewardTolerance) return scheme.equal;
  return mos_new > mos_old ? scheme.improve : scheme.worsen;
}

}  // namespace uavqoe
