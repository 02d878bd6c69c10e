#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "moveprint/types.hpp"

namespace moveprint {

struct ShotRef {
  std::string match_id;
  int t = 0;
  int period = 1;
  std::string shooter;
  std::string team;
  double x_pct = 0.0;
  double y_pct = 0.0;
};

// Timestamped shot events of a match, in event order.
std::vector<ShotRef> find_shots(const Match& match);

// The movement terminating in the given shot: same match and shooter, ends
// at the shot's time and location. Absent when the shot was the player's
// first event or the pair was filtered out.
std::optional<MovementVector> shot_approach(
    const ShotRef& shot, const std::vector<MovementVector>& movements);

// Final-approach movements for every shot the player takes in the match.
std::vector<MovementVector> preshot_player(
    const Match& match, const std::vector<MovementVector>& movements,
    const std::string& player);

struct PreShotSet {
  ShotRef shot;
  int window_s = 20;
  // Movements of the shooter's team (shooter included) ending within
  // [shot_t - window_s, shot_t], sorted by (player_id, T, dt).
  std::vector<MovementVector> movements;
};

PreShotSet preshot_team(const Match& match, const ShotRef& shot,
                        const std::vector<MovementVector>& movements,
                        int window_s = 20);

// Flattened rows for the CLI output.
struct PreShotRow {
  ShotRef shot;
  MovementVector movement;
};

std::vector<PreShotRow> preshot_player_rows(
    const std::vector<Match>& matches,
    const std::vector<MovementVector>& movements, const std::string& player);

std::vector<PreShotRow> preshot_team_rows(
    const std::vector<Match>& matches,
    const std::vector<MovementVector>& movements, const std::string& team,
    int window_s = 20);

// CSV schema: match_id,shot_t,shooter,player_id,T,dt,x1,y1,x2,y2,speed_kmh,ball
void write_preshot_csv(std::ostream& out, const std::vector<PreShotRow>& rows);

}  // namespace moveprint
