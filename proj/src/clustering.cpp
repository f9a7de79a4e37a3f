// Copyright 2026 The uavqoe Authors
// SPDX-License-Identifier: Apache-2.0

#include "uavqoe/clustering.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "uavqoe/common.hpp"

namespace uavqoe {

namespace {

double squared_distance(const Point2& a, const Point2& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

struct Lloyd {
  std::span<const Point2> points;
  std::uint64_t evaluations = 0;

  // Nearest centroid per point, ties to the lowest index.
  std::vector<int> assign(const std::vector<Point2>& centroids) {
    std::vector<int> out(points.size(), 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < centroids.size(); ++c) {
        const double d = squared_distance(points[i], centroids[c]);
        if (d < best) {
          best = d;
          out[i] = static_cast<int>(c);
        }
      }
    }
    evaluations += points.size() * centroids.size();
    return out;
  }

  // Cluster means. An empty cluster is re-seeded at the point farthest from
  // its own centroid.
  std::vector<Point2> update(const std::vector<int>& assignments, std::vector<Point2> centroids) {
    const std::size_t k = centroids.size();
    std::vector<Point2> sums(k);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto c = static_cast<std::size_t>(assignments[i]);
      sums[c].x += points[i].x;
      sums[c].y += points[i].y;
      ++counts[c];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] > 0) {
        centroids[c] = {sums[c].x / static_cast<double>(counts[c]),
                        sums[c].y / static_cast<double>(counts[c])};
      }
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] != 0) continue;
      std::size_t far = 0;
      double far_d = -1.0;
      for (std::size_t i = 0; i < points.size(); ++i) {
        const double d =
            squared_distance(points[i], centroids[static_cast<std::size_t>(assignments[i])]);
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      evaluations += points.size();
      centroids[c] = points[far];
    }
    return centroids;
  }

  ClusterResult converge(std::vector<Point2> centroids) {
    ClusterResult result;
    std::vector<int> assignments = assign(centroids);
    int iter = 0;
    while (iter < kLloydMaxIterations) {
      ++iter;
      centroids = update(assignments, std::move(centroids));
      std::vector<int> next = assign(centroids);
      if (next == assignments) break;
      assignments = std::move(next);
    }
    result.partition.assignments = std::move(assignments);
    result.partition.centroids = update(result.partition.assignments, std::move(centroids));
    result.sse = sum_squared_error(points, result.partition);
    result.iterations = iter;
    result.distance_evaluations = evaluations;
    return result;
  }

  double sse_of(const std::vector<Point2>& centroids) {
    const std::vector<int> a = assign(centroids);
    double sse = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      sse += squared_distance(points[i], centroids[static_cast<std::size_t>(a[i])]);
    }
    return sse;
  }
};

void check_inputs(std::span<const Point2> points, int clusters) {
  require(clusters >= 1, "clustering: cluster count must be >= 1");
  require(static_cast<std::size_t>(clusters) <= points.size(),
          "clustering: cluster count exceeds number of users");
}

// Forgy initialisation: `clusters` distinct points chosen uniformly.
std::vector<Point2> forgy(std::span<const Point2> points, int clusters, Rng& rng) {
  std::vector<std::size_t> idx(points.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::vector<Point2> out;
  out.reserve(static_cast<std::size_t>(clusters));
  for (std::size_t c = 0; c < static_cast<std::size_t>(clusters); ++c) {
    const std::size_t pick = c + rng.index(idx.size() - c);
    std::swap(idx[c], idx[pick]);
    out.push_back(points[idx[c]]);
  }
  return out;
}

}  // namespace

std::vector<int> Partition::members(int cluster) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    if (assignments[i] == cluster) out.push_back(static_cast<int>(i));
  }
  return out;
}

void GaConfig::validate() const {
  require(population_size >= 1, "ga: population size must be >= 1");
  require(generations >= 0, "ga: generations must be >= 0");
  require(mutation_rate >= 0.0 && mutation_rate <= 1.0, "ga: mutation rate must be in [0, 1]");
}

double sum_squared_error(std::span<const Point2> points, const Partition& partition) {
  double sse = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    sse += squared_distance(points[i],
                            partition.centroids[static_cast<std::size_t>(partition.assignments[i])]);
  }
  return sse;
}

ClusterResult kmeans(std::span<const Point2> points, int clusters, std::uint64_t seed) {
  check_inputs(points, clusters);
  Rng rng(seed);
  return kmeans_from(points, forgy(points, clusters, rng));
}

ClusterResult kmeans_from(std::span<const Point2> points, std::vector<Point2> centroids) {
  check_inputs(points, static_cast<int>(centroids.size()));
  Lloyd lloyd{points};
  return lloyd.converge(std::move(centroids));
}

ClusterResult gak_means(std::span<const Point2> points, int clusters, const GaConfig& config) {
  check_inputs(points, clusters);
  config.validate();

  // Member 0 starts where plain K-means with the same seed starts.
  Rng init_rng(config.seed);
  std::vector<std::vector<Point2>> population;
  population.push_back(forgy(points, clusters, init_rng));
  Rng rng(mix_seed(config.seed, 0x6a6b));
  while (population.size() < static_cast<std::size_t>(config.population_size)) {
    population.push_back(forgy(points, clusters, rng));
  }

  const auto initial = population;
  Lloyd lloyd{points};
  std::vector<Point2> best = population.front();
  double best_sse = lloyd.sse_of(best);
  std::vector<double> fitness(population.size());

  for (int gen = 0; gen < config.generations; ++gen) {
    for (std::size_t p = 0; p < population.size(); ++p) {
      auto& chromosome = population[p];
      chromosome = lloyd.update(lloyd.assign(chromosome), std::move(chromosome));
      for (auto& centroid : chromosome) {
        if (rng.uniform() >= config.mutation_rate) continue;
        const Point2& target = points[rng.index(points.size())];
        const double step = rng.uniform();
        centroid.x += step * (target.x - centroid.x);
        centroid.y += step * (target.y - centroid.y);
      }
      const double sse = lloyd.sse_of(chromosome);
      fitness[p] = 1.0 / (1.0 + sse);
      if (sse < best_sse) {
        best_sse = sse;
        best = chromosome;
      }
    }

    const auto elite = static_cast<std::size_t>(
        std::max_element(fitness.begin(), fitness.end()) - fitness.begin());
    const double total = std::accumulate(fitness.begin(), fitness.end(), 0.0);
    std::vector<std::vector<Point2>> next;
    next.reserve(population.size());
    next.push_back(population[elite]);
    while (next.size() < population.size()) {
      double ticket = rng.uniform() * total;
      std::size_t pick = 0;
      while (pick + 1 < fitness.size() && ticket >= fitness[pick]) {
        ticket -= fitness[pick];
        ++pick;
      }
      next.push_back(population[pick]);
    }
    population = std::move(next);
  }

  // Polish: converge the plain K-means lineage, the best-ever chromosome, the
  // survivors and the initial population. Lowest SSE wins; earlier on ties.
  ClusterResult result = kmeans_from(points, [&] {
    Rng again(config.seed);
    return forgy(points, clusters, again);
  }());
  std::uint64_t evaluations = lloyd.evaluations + result.distance_evaluations;
  auto consider = [&](const std::vector<Point2>& centroids) {
    ClusterResult candidate = kmeans_from(points, centroids);
    evaluations += candidate.distance_evaluations;
    if (candidate.sse < result.sse) result = std::move(candidate);
  };
  consider(best);
  for (const auto& chromosome : population) consider(chromosome);
  for (const auto& chromosome : initial) consider(chromosome);
  result.distance_evaluations = evaluations;
  return result;
}

}  // namespace uavqoe
