#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "moveprint/cluster.hpp"
#include "moveprint/ingest.hpp"
#include "moveprint/metrics.hpp"
#include "moveprint/profile.hpp"
#include "moveprint/synthgen.hpp"
#include "support/builders.hpp"

using namespace moveprint;

namespace {

SeasonSpec tiny_spec(std::uint64_t seed = 42) {
  return testdata::small_season_spec(2, 6, 4, seed);
}

}  // namespace

TEST_CASE("spec validation rejects malformed seasons") {
  auto spec = tiny_spec();

  SUBCASE("odd team count") {
    spec.n_teams = 3;
    CHECK_THROWS_AS(generate_season(spec), std::invalid_argument);
  }
  SUBCASE("no archetypes") {
    spec.archetypes.clear();
    CHECK_THROWS_AS(generate_season(spec), std::invalid_argument);
  }
  SUBCASE("weights must sum to one") {
    spec.archetypes[0].mixture[0].weight = 0.9;
    CHECK_THROWS_AS(generate_season(spec), std::invalid_argument);
  }
  SUBCASE("mixture means must stay on the pitch") {
    spec.archetypes[0].mixture[0].mean = {50.0, 70.0, 50.0, 30.0};
    CHECK_THROWS_AS(generate_season(spec), std::invalid_argument);
  }
  SUBCASE("clone pairs must reference known distinct players") {
    spec.clones = {{"p0000", "p9999"}};
    CHECK_THROWS_AS(generate_season(spec), std::invalid_argument);
    spec.clones = {{"p0000", "p0000"}};
    CHECK_THROWS_AS(generate_season(spec), std::invalid_argument);
  }
  SUBCASE("erratic list must reference known players") {
    spec.erratic = {"p9999"};
    CHECK_THROWS_AS(generate_season(spec), std::invalid_argument);
  }
  SUBCASE("assignment must cover every player") {
    spec.assignment = {0};
    CHECK_THROWS_AS(generate_season(spec), std::invalid_argument);
  }
  SUBCASE("bad movements range") {
    spec.archetypes[0].movements_per_game_min = 10;
    spec.archetypes[0].movements_per_game_max = 5;
    CHECK_THROWS_AS(generate_season(spec), std::invalid_argument);
  }
}

TEST_CASE("generation is reproducible and seed-sensitive") {
  const auto a = generate_season(tiny_spec(42));
  const auto b = generate_season(tiny_spec(42));
  CHECK(a.planted == b.planted);
  CHECK(canonical_jsonl(a.matches) == canonical_jsonl(b.matches));

  const auto c = generate_season(tiny_spec(43));
  CHECK(a.planted != c.planted);
}

TEST_CASE("extraction recovers the planted movements bit-exactly") {
  const auto truth = generate_season(tiny_spec());
  const auto extracted = testdata::extract_all(truth.matches);
  REQUIRE(extracted.size() == truth.planted.size());
  CHECK(extracted == truth.planted);
}

TEST_CASE("the event log round-trips through the parser unchanged") {
  const auto truth = generate_season(tiny_spec());
  const std::string text = canonical_jsonl(truth.matches);
  std::istringstream in(text);
  const auto report = parse_event_log(in, LogFormat::Jsonl);
  CHECK(report.rejects.empty());
  CHECK(canonical_jsonl(report.matches) == text);
}

TEST_CASE("rosters assign padded ids in team blocks") {
  auto spec = tiny_spec();
  spec.extra_players = 1;
  const auto truth = generate_season(spec);
  REQUIRE(truth.players.size() == 13);  // 2 teams x 6 + 1 extra
  CHECK(truth.players[0].player_id == "p0000");
  CHECK(truth.players[0].team_id == "t00");
  CHECK(truth.players[6].team_id == "t00");  // the extra seat enlarges team 0
  CHECK(truth.players[7].team_id == "t01");
  CHECK(truth.players[12].team_id == "t01");

  std::set<std::string> archetypes;
  for (const auto& p : truth.players) archetypes.insert(p.archetype);
  CHECK(archetypes ==
        std::set<std::string>{"left_channel", "right_channel"});
}

TEST_CASE("the schedule is a cycling round robin") {
  auto spec = testdata::small_season_spec(4, 2, 6, 7);
  const auto truth = generate_season(spec);
  REQUIRE(truth.matches.size() == 12);  // 2 per round, 6 rounds

  std::map<std::pair<std::string, std::string>, int> meetings;
  for (std::size_t i = 0; i < truth.matches.size(); ++i) {
    const auto& m = truth.matches[i];
    CHECK(m.home_team_id < m.away_team_id);
    ++meetings[{m.home_team_id, m.away_team_id}];
  }
  CHECK(meetings.size() == 6);  // every unordered pair of 4 teams
  for (const auto& [pair, count] : meetings) CHECK(count == 2);

  // Each round uses every team exactly once.
  for (int round = 0; round < 6; ++round) {
    std::set<std::string> seen;
    for (int g = 0; g < 2; ++g) {
      const auto& m = truth.matches[static_cast<std::size_t>(round * 2 + g)];
      seen.insert(m.home_team_id);
      seen.insert(m.away_team_id);
    }
    CHECK(seen.size() == 4);
  }
}

TEST_CASE("planted movements stay on the pitch with positive durations") {
  const auto truth = generate_season(tiny_spec());
  CHECK(truth.planted.size() > 100);
  for (const auto& v : truth.planted) {
    CHECK(v.duration_s >= 1);
    CHECK(v.speed_kmh > 0.0);
    CHECK(v.x1_m >= 0.0);
    CHECK(v.x1_m <= 105.0);
    CHECK(v.y1_m >= 0.0);
    CHECK(v.y1_m <= 68.0);
    CHECK(v.x2_m >= 0.0);
    CHECK(v.x2_m <= 105.0);
    CHECK(v.y2_m >= 0.0);
    CHECK(v.y2_m <= 68.0);
  }

  std::map<std::string, std::size_t> counted;
  for (const auto& v : truth.planted) ++counted[v.player_id];
  for (const auto& p : truth.players) {
    CHECK(p.n_planted == counted[p.player_id]);
    // 4 rounds at 26+ movements per game, far from the period capacity.
    CHECK(p.n_planted >= 4 * 26);
  }
}

TEST_CASE("second halves restart at the kickoff timestamp") {
  const auto truth = generate_season(tiny_spec());
  bool saw_second_half = false;
  for (const auto& m : truth.matches) {
    int first_t2 = -1;
    for (const auto& e : m.events) {
      REQUIRE(e.timestamp_s.has_value());
      CHECK(*e.timestamp_s >= 0);
      if (e.period == 2 && first_t2 < 0) first_t2 = *e.timestamp_s;
    }
    if (first_t2 >= 0) {
      saw_second_half = true;
      CHECK(first_t2 == 2700);
    }
  }
  CHECK(saw_second_half);
}

TEST_CASE("possession probability drives the ball flag") {
  auto all_ball = tiny_spec();
  for (auto& a : all_ball.archetypes) a.possession_prob = 1.0;
  const auto carried = generate_season(all_ball);
  for (const auto& v : carried.planted) CHECK(v.with_ball);

  auto no_ball = tiny_spec();
  for (auto& a : no_ball.archetypes) a.possession_prob = 0.0;
  const auto free_running = generate_season(no_ball);
  for (const auto& v : free_running.planted) CHECK_FALSE(v.with_ball);
}

TEST_CASE("clones share their template's mixture") {
  auto spec = tiny_spec();
  spec.clones = {{"p0001", "p0007"}};
  const auto truth = generate_season(spec);

  const PlayerTruth* a = nullptr;
  const PlayerTruth* b = nullptr;
  for (const auto& p : truth.players) {
    if (p.player_id == "p0001") a = &p;
    if (p.player_id == "p0007") b = &p;
  }
  REQUIRE(a);
  REQUIRE(b);
  CHECK(b->clone_of == "p0001");
  CHECK(a->clone_of.empty());
  CHECK(a->archetype == b->archetype);
  REQUIRE(a->effective_mixture.size() == b->effective_mixture.size());
  for (std::size_t i = 0; i < a->effective_mixture.size(); ++i) {
    CHECK(a->effective_mixture[i].mean == b->effective_mixture[i].mean);
    CHECK(a->effective_mixture[i].weight == b->effective_mixture[i].weight);
  }
}

TEST_CASE("a clone pair lands next to each other in profile space") {
  auto spec = testdata::small_season_spec(2, 8, 8, 11);
  spec.clones = {{"p0002", "p0010"}};
  const auto truth = generate_season(spec);
  const auto movements = testdata::extract_all(truth.matches);

  TrainOptions train;
  train.batch_size = 512;
  train.iterations = 400;
  const auto model = minibatch_kmeans(movement_points(movements), 24, train);
  const auto profiles = build_profiles(movements, model, ProfileScope::Season);

  MetricsOptions opts;
  opts.m = 1;
  opts.min_movements = 0;
  const auto list = most_similar("p0002", profiles, opts);
  REQUIRE(list.entries.size() == 1);
  CHECK(list.entries[0].player_id == "p0010");
  CHECK(list.entries[0].distance < 0.05);
}

TEST_CASE("erratic players flag through to the truth record") {
  auto spec = tiny_spec();
  spec.erratic = {"p0003"};
  const auto truth = generate_season(spec);
  for (const auto& p : truth.players)
    CHECK(p.erratic == (p.player_id == "p0003"));
}

TEST_CASE("scale_preset(\"paper\") describes the headline season shape") {
  const auto spec = scale_preset("paper");
  CHECK(spec.total_players() == 542);
  CHECK(spec.n_teams == 20);
  CHECK(spec.n_games == 38);
  CHECK_FALSE(spec.archetypes.empty());
  std::ostringstream out;
  CHECK_NOTHROW(write_season_spec_json(out, spec));
  CHECK_FALSE(out.str().empty());

  CHECK_THROWS_AS(scale_preset("galaxy"), std::invalid_argument);
}

TEST_CASE("season specs round-trip through json") {
  auto spec = tiny_spec();
  spec.clones = {{"p0001", "p0007"}};
  spec.erratic = {"p0002"};

  std::ostringstream out;
  write_season_spec_json(out, spec);
  std::istringstream in(out.str());
  const auto back = read_season_spec_json(in);

  CHECK(back.n_teams == spec.n_teams);
  CHECK(back.players_per_team == spec.players_per_team);
  CHECK(back.n_games == spec.n_games);
  CHECK(back.seed == spec.seed);
  CHECK(back.clones == spec.clones);
  CHECK(back.erratic == spec.erratic);
  REQUIRE(back.archetypes.size() == spec.archetypes.size());
  CHECK(back.archetypes[0].name == spec.archetypes[0].name);
  CHECK(back.archetypes[0].mixture[0].mean == spec.archetypes[0].mixture[0].mean);

  const auto a = generate_season(spec);
  const auto b = generate_season(back);
  CHECK(a.planted == b.planted);
}

TEST_CASE("the truth manifest summarizes the season") {
  const auto truth = generate_season(tiny_spec());
  std::ostringstream out;
  write_truth_json(out, truth);
  const auto j = nlohmann::json::parse(out.str());
  CHECK(j.at("n_players").get<std::size_t>() == truth.players.size());
  CHECK(j.at("n_matches").get<std::size_t>() == truth.matches.size());
  CHECK(j.at("total_planted").get<std::size_t>() == truth.planted.size());
  CHECK(j.at("players").size() == truth.players.size());
}
