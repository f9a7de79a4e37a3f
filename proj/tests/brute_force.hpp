// Copyright 2026 The uavqoe Authors
// SPDX-License-Identifier: Apache-2.0

// Brute-force reference solutions shared by the unit and acceptance tests.

#pragma once

#include <limits>
#include <span>
#include <vector>

#include "uavqoe/clustering.hpp"

namespace uavqoe::testing {

/// Minimum SSE over every assignment of the points to `clusters` non-empty
/// groups, each group scored around its own mean.
inline double optimal_partition_sse(std::span<const Point2> points, int clusters) {
  const std::size_t n = points.size();
  std::vector<int> label(n, 0);
  double best = std::numeric_limits<double>::infinity();
  for (;;) {
    std::vector<double> sx(clusters, 0.0), sy(clusters, 0.0);
    std::vector<int> count(clusters, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const int c = label[i];
      sx[c] += points[i].x;
      sy[c] += points[i].y;
      ++count[c];
    }
    bool full = true;
    double sse = 0.0;
    for (int c = 0; c < clusters; ++c) {
      if (count[c] == 0) {
        full = false;
        break;
      }
      // Two-pass form for accuracy.
      const double mx = sx[c] / count[c];
      const double my = sy[c] / count[c];
      for (std::size_t i = 0; i < n; ++i) {
        if (label[i] != c) continue;
        sse += (points[i].x - mx) * (points[i].x - mx) + (points[i].y - my) * (points[i].y - my);
      }
    }
    if (full && sse < best) best = sse;

    std::size_t pos = 0;
    while (pos < n && ++label[pos] == clusters) label[pos++] = 0;
    if (pos == n) break;
  }
  return best;
}

}  // namespace uavqoe::testing
