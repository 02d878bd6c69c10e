#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "moveprint/types.hpp"

namespace moveprint {

struct ImputationStats {
  std::size_t imputed = 0;
  std::size_t orphan_receptions = 0;
};

// Fills in missing reception timestamps from the nearest preceding successful
// pass by another player in the same period. Receptions with no such pass are
// left untouched and counted as orphans.
ImputationStats impute_reception_timestamps(std::vector<Event>& events);

struct FramePoint {
  double x_m = 0.0;   // standard 105x68 frame
  double y_m = 0.0;
  double xv_m = 0.0;  // true venue meters
  double yv_m = 0.0;
};

FramePoint to_standard_frame(double x_pct, double y_pct, const Venue& venue);

// Speed in km/h of a straight-line displacement given in percent coordinates,
// measured in true venue meters. dt_s must be positive.
double movement_speed_kmh(double x1_pct, double y1_pct, double x2_pct,
                          double y2_pct, const Venue& venue, int dt_s);

// Which event kinds may start / end an in-possession movement.
struct PossessionTable {
  std::array<bool, kEventKindCount> start{};
  std::array<bool, kEventKindCount> end{};

  static const PossessionTable& standard();
};

bool possession_flag(EventKind start_kind, EventKind end_kind,
                     const PossessionTable& table = PossessionTable::standard());

struct ExtractOptions {
  int max_gap_s = 0;  // drop pairs with dt above this; 0 means unlimited
  PossessionTable possession = PossessionTable::standard();
};

struct ExtractStats {
  ImputationStats imputation;
  std::size_t pairs_considered = 0;
  std::size_t dropped_zero_dt = 0;
  std::size_t dropped_missing_timestamp = 0;
  std::size_t dropped_over_gap = 0;
};

// One movement per consecutive same-player event pair within a period.
// Endpoints are in the standard frame, speed in venue meters. Output is
// sorted by (match_id, player_id, T, dt).
std::vector<MovementVector> extract_movements(const Match& match,
                                              const Venue& venue,
                                              const ExtractOptions& opts = {},
                                              ExtractStats* stats = nullptr);

std::vector<MovementVector> filter_speed(std::vector<MovementVector> movements,
                                         double threshold_kmh);

// CSV schema: match_id,player_id,T,dt,x1,y1,x2,y2,speed_kmh,ball
// Floats use fixed 6-decimal formatting so repeated runs are byte-identical.
void write_movements_csv(std::ostream& out,
                         const std::vector<MovementVector>& movements);
std::vector<MovementVector> read_movements_csv(std::istream& in);

}  // namespace moveprint
