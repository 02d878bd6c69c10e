#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "moveprint/types.hpp"

namespace moveprint {

// Clustering operates on movement endpoints only: (x1, y1, x2, y2) in the
// standard frame. Time, speed and possession act as filters, not features.
using Point4 = std::array<double, 4>;

Point4 movement_point(const MovementVector& m);
std::vector<Point4> movement_points(const std::vector<MovementVector>& movements);

double squared_distance(const Point4& a, const Point4& b);

struct ClusterModel {
  int k = 0;
  std::uint64_t seed = 0;
  int batch_size = 0;
  int iterations = 0;
  double inertia = 0.0;
  std::vector<Point4> centroids;
};

// k-means++ seeding. Runs over a canonically sorted copy of the points, so
// the result depends only on the multiset of points and the seed.
std::vector<Point4> init_centroids(const std::vector<Point4>& points, int k,
                                   std::uint64_t seed);

struct TrainOptions {
  int batch_size = 1024;
  int iterations = 10000;
  std::uint64_t seed = 42;
  int workers = 1;  // parallelism of the assignment step; 0 = hardware
};

// Mini-batch K-means with per-centroid 1/count learning rates. When
// batch_size covers the whole dataset the loop degenerates to exact Lloyd
// steps with early stopping on stable assignments. Reported inertia is
// always measured over the full dataset.
ClusterModel minibatch_kmeans(const std::vector<Point4>& points, int k,
                              const TrainOptions& opts = {});

// Index of the centroid with minimal squared distance; ties break low.
int assign(const Point4& p, const ClusterModel& model);
int assign(const MovementVector& m, const ClusterModel& model);

double inertia(const std::vector<Point4>& points, const ClusterModel& model,
               int workers = 1);

// Number of points assigned to each cluster; zero entries mark clusters no
// training point reaches.
std::vector<std::size_t> cluster_histogram(const std::vector<Point4>& points,
                                           const ClusterModel& model,
                                           int workers = 1);

void write_model_json(std::ostream& out, const ClusterModel& model);
ClusterModel read_model_json(std::istream& in);

}  // namespace moveprint
