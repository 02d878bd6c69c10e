#include "moveprint/chances.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include "moveprint/csv.hpp"
#include "moveprint/extract.hpp"

namespace moveprint {

namespace {

// Movement endpoints read back from the 6-decimal store differ from freshly
// computed standard-frame values by at most rounding; this tolerance covers it.
constexpr double kEndpointTolM = 1e-3;

bool ends_at_shot(const MovementVector& m, const ShotRef& shot) {
  if (m.match_id != shot.match_id || m.player_id != shot.shooter) return false;
  if (m.start_s + m.duration_s != shot.t) return false;
  const FramePoint p = to_standard_frame(shot.x_pct, shot.y_pct, Venue{});
  return std::abs(m.x2_m - p.x_m) <= kEndpointTolM &&
         std::abs(m.y2_m - p.y_m) <= kEndpointTolM;
}

void sort_rows(std::vector<PreShotRow>& rows) {
  std::sort(rows.begin(), rows.end(), [](const PreShotRow& a, const PreShotRow& b) {
    if (a.shot.match_id != b.shot.match_id) return a.shot.match_id < b.shot.match_id;
    if (a.shot.t != b.shot.t) return a.shot.t < b.shot.t;
    if (a.shot.shooter != b.shot.shooter) return a.shot.shooter < b.shot.shooter;
    if (a.movement.player_id != b.movement.player_id)
      return a.movement.player_id < b.movement.player_id;
    if (a.movement.start_s != b.movement.start_s)
      return a.movement.start_s < b.movement.start_s;
    return a.movement.duration_s < b.movement.duration_s;
  });
}

}  // namespace

std::vector<ShotRef> find_shots(const Match& match) {
  std::vector<ShotRef> shots;
  for (const auto& e : match.events) {
    if (e.kind != EventKind::Shot || !e.timestamp_s) continue;
    shots.push_back({match.match_id, *e.timestamp_s, e.period, e.player_id,
                     e.team_id, e.x_pct, e.y_pct});
  }
  return shots;
}

std::optional<MovementVector> shot_approach(
    const ShotRef& shot, const std::vector<MovementVector>& movements) {
  const MovementVector* best = nullptr;
  for (const auto& m : movements) {
    if (!ends_at_shot(m, shot)) continue;
    // Several candidates can only arise from coincident locations; prefer
    // the latest departure, i.e. the tightest approach.
    if (!best || m.start_s > best->start_s) best = &m;
  }
  if (!best) return std::nullopt;
  return *best;
}

std::vector<MovementVector> preshot_player(
    const Match& match, const std::vector<MovementVector>& movements,
    const std::string& player) {
  std::vector<MovementVector> out;
  for (const auto& shot : find_shots(match)) {
    if (shot.shooter != player) continue;
    if (auto approach = shot_approach(shot, movements)) out.push_back(*approach);
  }
  return out;
}

PreShotSet preshot_team(const Match& match, const ShotRef& shot,
                        const std::vector<MovementVector>& movements,
                        int window_s) {
  std::map<std::string, std::string> team_of;
  for (const auto& e : match.events) team_of.emplace(e.player_id, e.team_id);

  PreShotSet set;
  set.shot = shot;
  set.window_s = window_s;
  for (const auto& m : movements) {
    if (m.match_id != shot.match_id) continue;
    const auto it = team_of.find(m.player_id);
    if (it == team_of.end() || it->second != shot.team) continue;
    const int end_t = m.start_s + m.duration_s;
    if (end_t < shot.t - window_s || end_t > shot.t) continue;
    set.movements.push_back(m);
  }
  std::sort(set.movements.begin(), set.movements.end(),
            [](const MovementVector& a, const MovementVector& b) {
              if (a.player_id != b.player_id) return a.player_id < b.player_id;
              if (a.start_s != b.start_s) return a.start_s < b.start_s;
              return a.duration_s < b.duration_s;
            });
  return set;
}

std::vector<PreShotRow> preshot_player_rows(
    const std::vector<Match>& matches,
    const std::vector<MovementVector>& movements, const std::string& player) {
  std::vector<PreShotRow> rows;
  for (const auto& match : matches) {
    for (const auto& shot : find_shots(match)) {
      if (shot.shooter != player) continue;
      if (auto approach = shot_approach(shot, movements))
        rows.push_back({shot, *approach});
    }
  }
  sort_rows(rows);
  return rows;
}

std::vector<PreShotRow> preshot_team_rows(
    const std::vector<Match>& matches,
    const std::vector<MovementVector>& movements, const std::string& team,
    int window_s) {
  std::vector<PreShotRow> rows;
  for (const auto& match : matches) {
    for (const auto& shot : find_shots(match)) {
      if (shot.team != team) continue;
      const PreShotSet set = preshot_team(match, shot, movements, window_s);
      for (const auto& m : set.movements) rows.push_back({set.shot, m});
    }
  }
  sort_rows(rows);
  return rows;
}

void write_preshot_csv(std::ostream& out, const std::vector<PreShotRow>& rows) {
  out << "match_id,shot_t,shooter,player_id,T,dt,x1,y1,x2,y2,speed_kmh,ball\n";
  std::string line;
  for (const auto& r : rows) {
    line.clear();
    csv::append_field(line, r.shot.match_id);
    csv::append_field(line, std::to_string(r.shot.t));
    csv::append_field(line, r.shot.shooter);
    csv::append_field(line, r.movement.player_id);
    csv::append_field(line, std::to_string(r.movement.start_s));
    csv::append_field(line, std::to_string(r.movement.duration_s));
    csv::append_field(line, csv::format_fixed(r.movement.x1_m, 6));
    csv::append_field(line, csv::format_fixed(r.movement.y1_m, 6));
    csv::append_field(line, csv::format_fixed(r.movement.x2_m, 6));
    csv::append_field(line, csv::format_fixed(r.movement.y2_m, 6));
    csv::append_field(line, csv::format_fixed(r.movement.speed_kmh, 6));
    csv::append_field(line, r.movement.with_ball ? "1" : "0");
    out << line << '\n';
  }
}

}  // namespace moveprint
