#include <benchmark/benchmark.h>

#include <vector>

#include "moveprint/cluster.hpp"
#include "moveprint/extract.hpp"
#include "moveprint/metrics.hpp"
#include "moveprint/profile.hpp"
#include "moveprint/rng.hpp"
#include "moveprint/synthgen.hpp"

namespace {

using namespace moveprint;

std::vector<Point4> random_points(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Point4> points(n);
  for (auto& p : points) {
    p[0] = rng.uniform01() * kStandardPitchLength;
    p[1] = rng.uniform01() * kStandardPitchWidth;
    p[2] = rng.uniform01() * kStandardPitchLength;
    p[3] = rng.uniform01() * kStandardPitchWidth;
  }
  return points;
}

SeasonSpec small_spec(int teams, int games) {
  SeasonSpec spec = scale_preset("paper");
  spec.n_teams = teams;
  spec.players_per_team = 11;
  spec.extra_players = 0;
  spec.n_games = games;
  return spec;
}

void BM_AssignNearest(benchmark::State& state) {
  const auto points = random_points(static_cast<std::size_t>(state.range(0)), 7);
  ClusterModel model;
  model.k = 200;
  model.centroids = random_points(200, 11);
  for (auto _ : state) {
    int sum = 0;
    for (const auto& p : points) sum += assign(p, model);
    benchmark::DoNotOptimize(sum);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_AssignNearest)->Arg(10000);

void BM_MinibatchTraining(benchmark::State& state) {
  const auto points = random_points(100000, 3);
  TrainOptions opts;
  opts.iterations = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const ClusterModel model = minibatch_kmeans(points, 200, opts);
    benchmark::DoNotOptimize(model.inertia);
  }
}
BENCHMARK(BM_MinibatchTraining)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_UniquenessAllPairs(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(13);
  std::vector<CharacteristicVector> profiles(n);
  for (std::size_t i = 0; i < n; ++i) {
    profiles[i].player_id = "p" + std::to_string(i);
    profiles[i].n_movements = 1000;
    profiles[i].freq.resize(200);
    double total = 0.0;
    for (auto& f : profiles[i].freq) {
      f = rng.uniform01();
      total += f;
    }
    for (auto& f : profiles[i].freq) f /= total;
  }
  MetricsOptions opts;
  opts.min_movements = 0;
  for (auto _ : state) {
    const auto table = uniqueness_table(profiles, opts);
    benchmark::DoNotOptimize(table.size());
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_UniquenessAllPairs)->Arg(542)->Unit(benchmark::kMillisecond);

void BM_ExtractSeason(benchmark::State& state) {
  const SeasonTruth truth = generate_season(small_spec(4, 4));
  const Venue venue{};
  for (auto _ : state) {
    std::size_t total = 0;
    for (const auto& match : truth.matches)
      total += extract_movements(match, venue).size();
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(BM_ExtractSeason)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
