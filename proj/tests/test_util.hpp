// Copyright 2026 The uavqoe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "uavqoe/world.hpp"

namespace uavqoe::testing {

inline bool rel_close(double actual, double expected, double tol = 1e-9) {
  const double scale = std::max(std::abs(expected), 1e-300);
  return std::abs(actual - expected) <= tol * scale;
}

/// World with the given users (x, y) and cluster labels; one UAV per label.
inline World make_world(std::span<const double[2]> xy, std::span<const int> clusters) {
  World w;
  int n = 0;
  for (std::size_t i = 0; i < xy.size(); ++i) {
    UserState u;
    u.id = static_cast<int>(i);
    u.position = {xy[i][0], xy[i][1]};
    u.cluster = clusters[i];
    n = std::max(n, clusters[i] + 1);
    w.users.push_back(u);
  }
  for (int c = 0; c < n; ++c) w.uavs.push_back({c, {}, c});
  return w;
}

/// Small world: `count` users spread deterministically over the arena.
inline World small_world(int count, int clusters, const Arena& arena, std::uint64_t seed) {
  World w;
  w.arena = arena;
  Rng rng(seed);
  for (int i = 0; i < count; ++i) {
    UserState u;
    u.id = i;
    u.position = {rng.uniform(0.0, arena.x_max_m), rng.uniform(0.0, arena.y_max_m)};
    u.cluster = i % clusters;
    w.users.push_back(u);
  }
  for (int c = 0; c < clusters; ++c) w.uavs.push_back({c, {}, c});
  return w;
}

}  // namespace uavqoe::testing
