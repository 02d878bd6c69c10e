#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "moveprint/metrics.hpp"
#include "support/builders.hpp"
#include "support/oracle_metrics.hpp"

using namespace moveprint;
using testdata::profile;

TEST_CASE("cosine distance hand values") {
  const auto a = profile("a", {0.5, 0.5, 0.0});
  const auto b = profile("b", {1.0, 0.0, 0.0});
  CHECK(cosine_distance(a, b) ==
        doctest::Approx(1.0 - 1.0 / std::sqrt(2.0)).epsilon(1e-12));

  const auto c = profile("c", {0.0, 1.0, 0.0});
  CHECK(cosine_distance(b, c) == 1.0);  // disjoint support

  const auto d = profile("d", {0.25, 0.25, 0.5});
  const auto e = profile("e", {0.25, 0.25, 0.5});
  CHECK(cosine_distance(d, e) == 0.0);  // identical vectors, exactly zero
  CHECK(cosine_distance(d, d) == 0.0);
}

TEST_CASE("cosine distance rejects unusable inputs") {
  const auto a = profile("a", {0.5, 0.5});
  auto empty = profile("b", {0.0, 0.0});
  empty.n_movements = 0;
  CHECK_THROWS_AS(cosine_distance(a, empty), std::invalid_argument);

  const auto wide = profile("c", {0.25, 0.25, 0.5});
  CHECK_THROWS_AS(cosine_distance(a, wide), std::invalid_argument);
}

TEST_CASE("cosine distance stays inside the unit interval") {
  const auto profiles = testdata::random_profiles(40, 24, 7);
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    for (std::size_t j = i + 1; j < profiles.size(); ++j) {
      const double d = cosine_distance(profiles[i], profiles[j]);
      CHECK(d >= 0.0);
      CHECK(d <= 1.0);
      CHECK(d == cosine_distance(profiles[j], profiles[i]));
    }
  }
}

TEST_CASE("most similar agrees with the brute-force ranking") {
  const auto profiles = testdata::random_profiles(50, 20, 13);
  MetricsOptions opts;
  opts.m = 5;
  opts.min_movements = 0;
  for (const auto& p : profiles) {
    const auto got = most_similar(p.player_id, profiles, opts);
    const auto want = refimpl::neighbours(p.player_id, profiles, 0);
    REQUIRE(got.entries.size() == 5);
    for (std::size_t i = 0; i < got.entries.size(); ++i) {
      CHECK(got.entries[i].player_id == want[i].player_id);
      CHECK(got.entries[i].distance ==
            doctest::Approx(want[i].distance).epsilon(1e-12));
    }
  }
}

TEST_CASE("most similar enforces eligibility") {
  auto profiles = testdata::random_profiles(8, 6, 3);
  profiles[3].n_movements = 120;  // below the floor

  MetricsOptions opts;
  opts.m = 2;
  opts.min_movements = 500;
  const auto list = most_similar(profiles[0].player_id, profiles, opts);
  for (const auto& e : list.entries) CHECK(e.player_id != profiles[3].player_id);

  CHECK_THROWS_AS(most_similar(profiles[3].player_id, profiles, opts), std::runtime_error);
  CHECK_THROWS_AS(most_similar("nobody", profiles, opts), std::runtime_error);

  MetricsOptions greedy;
  greedy.m = 9;  // more neighbours than the pool holds
  greedy.min_movements = 0;
  CHECK_THROWS_AS(most_similar(profiles[0].player_id, profiles, greedy), std::runtime_error);
}

TEST_CASE("uniqueness is the sum of the nearest distances") {
  const auto profiles = testdata::random_profiles(30, 16, 29);
  MetricsOptions opts;
  opts.m = 5;
  opts.min_movements = 0;
  for (const auto& p : profiles) {
    const auto score = uniqueness(p.player_id, profiles, opts);
    const double want = refimpl::uniqueness(p.player_id, profiles, 5, 0);
    CHECK(score.u == doctest::Approx(want).epsilon(1e-12));
    const auto list = most_similar(p.player_id, profiles, opts);
    double sum = 0.0;
    for (const auto& e : list.entries) sum += e.distance;
    CHECK(score.u == doctest::Approx(sum).epsilon(1e-12));
  }
}

TEST_CASE("identical players have zero uniqueness exactly") {
  std::vector<CharacteristicVector> profiles;
  for (int i = 0; i < 6; ++i)
    profiles.push_back(profile("p" + std::to_string(i), {0.2, 0.3, 0.5}, 900));
  profiles.push_back(profile("p9", {0.0, 0.0, 1.0}, 900));

  MetricsOptions opts;
  opts.m = 5;
  opts.min_movements = 0;
  for (int i = 0; i < 6; ++i) {
    const auto score = uniqueness("p" + std::to_string(i), profiles, opts);
    CHECK(score.u == 0.0);
  }
}

TEST_CASE("uniqueness table sorts by score then id and respects the floor") {
  auto profiles = testdata::random_profiles(20, 12, 31);
  profiles[5].n_movements = 10;  // ineligible

  MetricsOptions opts;
  opts.m = 3;
  opts.min_movements = 500;
  const auto table = uniqueness_table(profiles, opts);
  CHECK(table.size() == 19);
  for (std::size_t i = 1; i < table.size(); ++i) {
    const bool ordered = table[i - 1].u > table[i].u ||
                         (table[i - 1].u == table[i].u &&
                          table[i - 1].player_id < table[i].player_id);
    CHECK(ordered);
  }
  for (const auto& row : table) CHECK(row.player_id != profiles[5].player_id);

  MetricsOptions parallel = opts;
  parallel.workers = 4;
  const auto table4 = uniqueness_table(profiles, parallel);
  REQUIRE(table4.size() == table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    CHECK(table4[i].player_id == table[i].player_id);
    CHECK(table4[i].u == table[i].u);
  }
}

TEST_CASE("consistency matches the brute-force mean including the self term") {
  std::vector<CharacteristicVector> games;
  moveprint::Rng rng(17);
  for (int g = 0; g < 8; ++g) {
    std::vector<double> freq(10);
    double total = 0.0;
    for (auto& f : freq) {
      f = rng.gamma(1.0);
      total += f;
    }
    for (auto& f : freq) f /= total;
    char match[8];
    std::snprintf(match, sizeof(match), "m%02d", g);
    games.push_back(profile("p1", freq, 30, match));
  }
  games.push_back(profile("p2", {1.0, 0, 0, 0, 0, 0, 0, 0, 0, 0}, 30, "m00"));

  const auto series = consistency_series("p1", games);
  const auto want = refimpl::consistency("p1", games);
  REQUIRE(series.points.size() == 8);
  REQUIRE(want.size() == 8);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(series.points[i].match_id == want[i].first);
    CHECK(series.points[i].value == doctest::Approx(want[i].second).epsilon(1e-12));
    CHECK(series.points[i].value >= 0.0);
    CHECK(series.points[i].value < 1.0);
  }
  CHECK(consistency("p1", "m03", games) ==
        doctest::Approx(want[3].second).epsilon(1e-12));
}

TEST_CASE("two orthogonal games score one half each") {
  const std::vector<CharacteristicVector> games = {
      profile("p1", {1.0, 0.0}, 20, "m01"),
      profile("p1", {0.0, 1.0}, 20, "m02"),
  };
  const auto series = consistency_series("p1", games);
  REQUIRE(series.points.size() == 2);
  CHECK(series.points[0].value == 0.5);
  CHECK(series.points[1].value == 0.5);
}

TEST_CASE("identical games are perfectly consistent") {
  std::vector<CharacteristicVector> games;
  for (int g = 0; g < 5; ++g)
    games.push_back(profile("p1", {0.25, 0.25, 0.5}, 40, "m0" + std::to_string(g)));
  const auto series = consistency_series("p1", games);
  REQUIRE(series.points.size() == 5);
  for (const auto& point : series.points) CHECK(point.value == 0.0);
}

TEST_CASE("a single game is trivially consistent and empty games are skipped") {
  std::vector<CharacteristicVector> games = {
      profile("p1", {0.5, 0.5}, 15, "m01"),
  };
  auto blank = profile("p1", {0.0, 0.0}, 0, "m02");
  games.push_back(blank);

  const auto series = consistency_series("p1", games);
  REQUIRE(series.points.size() == 1);
  CHECK(series.points[0].value == 0.0);
}

TEST_CASE("table csv formats distances to three decimals") {
  SimilarityList list;
  list.player_id = "p1";
  list.entries = {{"p2", 0.079}, {"p3", 0.5}};
  std::ostringstream sim;
  write_similarity_csv(sim, list);
  CHECK(sim.str() == "rank,player_id,distance\n1,p2,0.079\n2,p3,0.500\n");

  std::vector<UniquenessScore> table;
  UniquenessScore u;
  u.player_id = "p1";
  u.u = 1.23456;
  u.n_movements = 842;
  table.push_back(u);
  std::ostringstream uniq;
  write_uniqueness_csv(uniq, table);
  CHECK(uniq.str() == "player_id,uniqueness,n_movements\np1,1.235,842\n");

  ConsistencySeries series;
  series.player_id = "p1";
  series.points = {{"m01", 0.125}, {"m02", 1.0 / 3.0}};
  std::ostringstream cons;
  write_consistency_csv(cons, series);
  CHECK(cons.str() ==
        "game_index,match_id,consistency\n1,m01,0.125000\n2,m02,0.333333\n");
}
