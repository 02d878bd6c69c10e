#include "moveprint/cluster.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "moveprint/parallel.hpp"
#include "moveprint/rng.hpp"

namespace moveprint {

namespace {

constexpr std::size_t kAssignChunk = 2048;

// Seed-stream tags so the standalone init and full training agree.
constexpr std::uint64_t kInitStream = 1;
constexpr std::uint64_t kBatchStream = 2;

std::vector<Point4> sorted_copy(const std::vector<Point4>& points) {
  std::vector<Point4> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

int nearest_centroid(const Point4& p, const std::vector<Point4>& centroids) {
  int best = 0;
  double best_d2 = squared_distance(p, centroids[0]);
  for (int c = 1; c < static_cast<int>(centroids.size()); ++c) {
    const double d2 = squared_distance(p, centroids[static_cast<std::size_t>(c)]);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = c;
    }
  }
  return best;
}

std::vector<Point4> kmeanspp(const std::vector<Point4>& sorted, int k, Rng& rng) {
  const std::size_t n = sorted.size();
  std::vector<Point4> centroids;
  centroids.reserve(static_cast<std::size_t>(k));
  centroids.push_back(sorted[static_cast<std::size_t>(rng.below(n))]);

  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) d2[i] = squared_distance(sorted[i], centroids[0]);

  while (centroids.size() < static_cast<std::size_t>(k)) {
    double total = 0.0;
    for (const double d : d2) total += d;
    std::size_t pick = 0;
    if (total > 0.0) {
      const double r = rng.uniform01() * total;
      double cum = 0.0;
      pick = n - 1;
      for (std::size_t i = 0; i < n; ++i) {
        cum += d2[i];
        if (r < cum) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<std::size_t>(rng.below(n));
    }
    centroids.push_back(sorted[pick]);
    const Point4& c = centroids.back();
    for (std::size_t i = 0; i < n; ++i)
      d2[i] = std::min(d2[i], squared_distance(sorted[i], c));
  }
  return centroids;
}

// Assignment map step: deterministic at any worker count because each slot
// is written independently over a fixed chunk grid.
void assign_all(const std::vector<Point4>& points,
                const std::vector<Point4>& centroids, std::vector<int>& out,
                int workers) {
  out.resize(points.size());
  parallel_for_chunks(
      points.size(), kAssignChunk,
      [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
          out[i] = nearest_centroid(points[i], centroids);
      },
      workers);
}

}  // namespace

Point4 movement_point(const MovementVector& m) {
  return {m.x1_m, m.y1_m, m.x2_m, m.y2_m};
}

std::vector<Point4> movement_points(const std::vector<MovementVector>& movements) {
  std::vector<Point4> points;
  points.reserve(movements.size());
  for (const auto& m : movements) points.push_back(movement_point(m));
  return points;
}

double squared_distance(const Point4& a, const Point4& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

std::vector<Point4> init_centroids(const std::vector<Point4>& points, int k,
                                   std::uint64_t seed) {
  if (k <= 0) throw std::invalid_argument("cluster count must be positive");
  if (points.size() < static_cast<std::size_t>(k))
    throw std::invalid_argument("fewer points than clusters");
  Rng rng(split_seed(seed, kInitStream));
  return kmeanspp(sorted_copy(points), k, rng);
}

ClusterModel minibatch_kmeans(const std::vector<Point4>& points, int k,
                              const TrainOptions& opts) {
  if (opts.batch_size < 1) throw std::invalid_argument("batch size must be >= 1");
  if (opts.iterations < 1) throw std::invalid_argument("iterations must be >= 1");

  const std::vector<Point4> sorted = sorted_copy(points);
  const std::size_t n = sorted.size();

  ClusterModel model;
  model.k = k;
  model.seed = opts.seed;
  model.batch_size = opts.batch_size;
  model.iterations = opts.iterations;
  {
    Rng init_rng(split_seed(opts.seed, kInitStream));
    if (k <= 0) throw std::invalid_argument("cluster count must be positive");
    if (n < static_cast<std::size_t>(k))
      throw std::invalid_argument("fewer points than clusters");
    model.centroids = kmeanspp(sorted, k, init_rng);
  }

  if (static_cast<std::size_t>(opts.batch_size) >= n) {
    // Full-batch: exact Lloyd steps. Empty clusters keep their position.
    std::vector<int> labels(n), prev(n, -1);
    std::vector<Point4> sums(static_cast<std::size_t>(k));
    std::vector<std::size_t> counts(static_cast<std::size_t>(k));
    for (int it = 0; it < opts.iterations; ++it) {
      assign_all(sorted, model.centroids, labels, opts.workers);
      if (labels == prev) break;
      prev = labels;
      std::fill(sums.begin(), sums.end(), Point4{});
      std::fill(counts.begin(), counts.end(), std::size_t{0});
      for (std::size_t i = 0; i < n; ++i) {
        const auto c = static_cast<std::size_t>(labels[i]);
        for (std::size_t d = 0; d < 4; ++d) sums[c][d] += sorted[i][d];
        ++counts[c];
      }
      for (std::size_t c = 0; c < static_cast<std::size_t>(k); ++c) {
        if (counts[c] == 0) continue;
        for (std::size_t d = 0; d < 4; ++d)
          model.centroids[c][d] = sums[c][d] / static_cast<double>(counts[c]);
      }
    }
  } else {
    Rng batch_rng(split_seed(opts.seed, kBatchStream));
    const auto batch = static_cast<std::size_t>(opts.batch_size);
    std::vector<std::size_t> picks(batch);
    std::vector<Point4> batch_points(batch);
    std::vector<int> labels(batch);
    std::vector<std::uint64_t> hits(static_cast<std::size_t>(k), 0);
    for (int it = 0; it < opts.iterations; ++it) {
      for (std::size_t b = 0; b < batch; ++b) {
        picks[b] = static_cast<std::size_t>(batch_rng.below(n));
        batch_points[b] = sorted[picks[b]];
      }
      assign_all(batch_points, model.centroids, labels, opts.workers);
      for (std::size_t b = 0; b < batch; ++b) {
        const auto c = static_cast<std::size_t>(labels[b]);
        const double eta = 1.0 / static_cast<double>(++hits[c]);
        Point4& centroid = model.centroids[c];
        for (std::size_t d = 0; d < 4; ++d)
          centroid[d] += eta * (batch_points[b][d] - centroid[d]);
      }
    }
  }

  model.inertia = inertia(sorted, model, opts.workers);
  return model;
}

int assign(const Point4& p, const ClusterModel& model) {
  if (model.centroids.empty()) throw std::invalid_argument("model has no centroids");
  return nearest_centroid(p, model.centroids);
}

int assign(const MovementVector& m, const ClusterModel& model) {
  return assign(movement_point(m), model);
}

double inertia(const std::vector<Point4>& points, const ClusterModel& model,
               int workers) {
  if (model.centroids.empty()) throw std::invalid_argument("model has no centroids");
  std::vector<int> labels;
  assign_all(points, model.centroids, labels, workers);
  double sum = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    sum += squared_distance(points[i],
                            model.centroids[static_cast<std::size_t>(labels[i])]);
  return sum;
}

std::vector<std::size_t> cluster_histogram(const std::vector<Point4>& points,
                                           const ClusterModel& model,
                                           int workers) {
  std::vector<int> labels;
  assign_all(points, model.centroids, labels, workers);
  std::vector<std::size_t> counts(model.centroids.size(), 0);
  for (const int c : labels) ++counts[static_cast<std::size_t>(c)];
  return counts;
}

void write_model_json(std::ostream& out, const ClusterModel& model) {
  nlohmann::json j;
  j["k"] = model.k;
  j["seed"] = model.seed;
  j["batch_size"] = model.batch_size;
  j["iterations"] = model.iterations;
  j["inertia"] = model.inertia;
  auto& centroids = j["centroids"];
  centroids = nlohmann::json::array();
  for (const auto& c : model.centroids) centroids.push_back({c[0], c[1], c[2], c[3]});
  out << j.dump() << '\n';
}

ClusterModel read_model_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception&) {
    throw std::runtime_error("model file is not valid JSON");
  }
  if (!j.is_object()) throw std::runtime_error("model file is not a JSON object");
  ClusterModel model;
  try {
    model.k = j.at("k").get<int>();
    model.seed = j.at("seed").get<std::uint64_t>();
    model.batch_size = j.at("batch_size").get<int>();
    model.iterations = j.at("iterations").get<int>();
    model.inertia = j.at("inertia").get<double>();
    for (const auto& row : j.at("centroids")) {
      if (!row.is_array() || row.size() != 4)
        throw std::runtime_error("centroid rows must have 4 coordinates");
      model.centroids.push_back(
          {row[0].get<double>(), row[1].get<double>(), row[2].get<double>(),
           row[3].get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed model file: ") + e.what());
  }
  if (static_cast<std::size_t>(model.k) != model.centroids.size())
    throw std::runtime_error("model centroid count does not match k");
  return model;
}

}  // namespace moveprint
