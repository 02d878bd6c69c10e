#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "moveprint/cluster.hpp"
#include "moveprint/types.hpp"

namespace moveprint {

struct ArchetypeComponent {
  Point4 mean{};                  // (x1,y1,x2,y2) meters, standard frame
  std::array<double, 4> sigma{};  // per-coordinate spread, meters
  double weight = 1.0;
  double speed_mean_kmh = 15.0;
  double speed_sigma_kmh = 2.5;
};

struct ArchetypeSpec {
  std::string name;
  std::vector<ArchetypeComponent> mixture;  // weights must sum to 1
  double possession_prob = 0.5;
  int movements_per_game_min = 20;
  int movements_per_game_max = 30;
};

// A season is a round-robin schedule over an even number of teams; every
// team plays in each of the n_games rounds. Player ids are p0000... in team
// order, team ids t00..., match ids m0000... in schedule order.
struct SeasonSpec {
  int n_teams = 2;
  int players_per_team = 11;
  int extra_players = 0;  // one per team starting from team 0
  int n_games = 1;        // rounds played by every team
  std::uint64_t seed = 42;

  double mean_jitter_m = 2.0;         // per-player offset of component means
  double weight_jitter_alpha = 60.0;  // per-player Dirichlet concentration
  double erratic_alpha = 0.3;         // per-game redraw for erratic players

  std::vector<ArchetypeSpec> archetypes;
  std::vector<int> assignment;  // archetype per player; empty = i % size
  std::vector<std::pair<std::string, std::string>> clones;
  std::vector<std::string> erratic;

  int total_players() const { return n_teams * players_per_team + extra_players; }
};

struct PlayerTruth {
  std::string player_id;
  std::string team_id;
  std::string archetype;
  std::vector<ArchetypeComponent> effective_mixture;
  std::string clone_of;  // empty unless this player copies another's mixture
  bool erratic = false;
  std::size_t n_planted = 0;
};

struct SeasonTruth {
  std::vector<PlayerTruth> players;
  std::vector<Match> matches;  // canonical event order, sorted by match_id
  // Exactly what extraction must recover, in extraction's output order.
  std::vector<MovementVector> planted;
};

// Emits an event log whose extraction recovers the planted movements
// bit-exactly: every planted movement is one event pair, and consecutive
// pairs share a timestamp so no phantom movement survives the dt > 0 rule.
SeasonTruth generate_season(const SeasonSpec& spec);

// Named scale presets; "paper" yields 542 players over 38 rounds with
// roughly 660k movements of mean length about 19.4 m.
SeasonSpec scale_preset(const std::string& name);

SeasonSpec read_season_spec_json(std::istream& in);
void write_season_spec_json(std::ostream& out, const SeasonSpec& spec);
void write_truth_json(std::ostream& out, const SeasonTruth& truth);

}  // namespace moveprint
