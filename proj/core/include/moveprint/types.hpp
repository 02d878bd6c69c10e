#ifndef MOVEPRINT_TYPES_HPP
#define MOVEPRINT_TYPES_HPP

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace moveprint {

// All venues are normalized into this frame for clustering and rendering.
inline constexpr double kStandardPitchLength = 105.0;  // meters
inline constexpr double kStandardPitchWidth = 68.0;

// Closed event taxonomy. Richer source taxonomies must be mapped onto these
// twelve kinds by the feed adapter; anything unmapped parses as Other.
enum class EventKind {
  Pass,
  Reception,
  Shot,
  Dribble,
  Tackle,
  Interception,
  Recovery,
  Clearance,
  FoulWon,
  FoulCommitted,
  CornerTaken,
  Other,
};

inline constexpr int kEventKindCount = 12;

std::string_view to_string(EventKind kind);
EventKind event_kind_from_string(std::string_view name);  // unknown -> Other

// One annotated ball-related action. Coordinates are percent of pitch
// length/width, oriented so the acting player's team attacks toward +x.
// Receptions may arrive without a timestamp; it is imputed later from the
// initiating pass.
struct Event {
  std::string match_id;
  int period = 1;  // 1 or 2
  std::optional<int> timestamp_s;
  std::string team_id;
  std::string player_id;
  EventKind kind = EventKind::Other;
  double x_pct = 0.0;
  double y_pct = 0.0;
  bool outcome = true;
  std::string venue_id;  // empty = unspecified
};

struct Venue {
  std::string venue_id;
  double length_m = kStandardPitchLength;
  double width_m = kStandardPitchWidth;
};

struct Match {
  std::string match_id;
  std::string home_team_id;
  std::string away_team_id;
  std::string venue_id;  // empty = unspecified
  std::vector<Event> events;  // sorted by (period, timestamp, input order)
};

// A player's displacement between two consecutive events. Endpoints live in
// the standard 105x68 frame; speed is computed from true venue meters.
struct MovementVector {
  std::string match_id;
  std::string player_id;
  int start_s = 0;     // T
  int duration_s = 0;  // dt, always >= 1 in extracted output
  double x1_m = 0.0;
  double y1_m = 0.0;
  double x2_m = 0.0;
  double y2_m = 0.0;
  double speed_kmh = 0.0;
  bool with_ball = false;

  double length_m() const;

  bool operator==(const MovementVector&) const = default;
};

}  // namespace moveprint

#endif  // MOVEPRINT_TYPES_HPP
