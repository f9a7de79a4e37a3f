// Copyright 2026 The uavqoe Authors
// SPDX-License-Identifier: Apache-2.0

// Cell partition of ground users: Lloyd K-means and the genetic variant
// (GAK-means) that keeps a population of centroid sets.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace uavqoe {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

struct Partition {
  std::vector<int> assignments;  // user index -> cluster index
  std::vector<Point2> centroids;

  [[nodiscard]] int cluster_count() const { return static_cast<int>(centroids.size()); }
  [[nodiscard]] std::vector<int> members(int cluster) const;
  friend bool operator==(const Partition&, const Partition&) = default;
};

struct ClusterResult {
  Partition partition;
  double sse = 0.0;
  int iterations = 0;
  /// Point-to-centroid distance evaluations performed.
  std::uint64_t distance_evaluations = 0;
};

struct GaConfig {
  int population_size = 20;
  int generations = 50;
  double mutation_rate = 0.05;
  std::uint64_t seed = 1;

  void validate() const;
};

inline constexpr int kLloydMaxIterations = 300;

/// Sum of squared distances from each point to its assigned centroid.
double sum_squared_error(std::span<const Point2> points, const Partition& partition);

/// Lloyd iterations from Forgy initial centroids drawn with `seed`.
ClusterResult kmeans(std::span<const Point2> points, int clusters, std::uint64_t seed);

/// Lloyd iterations from the given centroids until assignments stabilize.
ClusterResult kmeans_from(std::span<const Point2> points, std::vector<Point2> centroids);

/// Genetic K-means: Lloyd step, mutation, fitness-proportional selection with
/// elitism. Never worse than kmeans(points, clusters, config.seed).
ClusterResult gak_means(std::span<const Point2> points, int clusters, const GaConfig& config);

}  // namespace uavqoe
