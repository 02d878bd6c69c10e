#include "moveprint/extract.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>

#include "moveprint/csv.hpp"

namespace moveprint {

ImputationStats impute_reception_timestamps(std::vector<Event>& events) {
  ImputationStats stats;
  int pass_period = 0;
  int pass_t = 0;
  std::string pass_player;
  bool have_pass = false;

  for (auto& e : events) {
    if (e.kind == EventKind::Reception && !e.timestamp_s) {
      if (have_pass && pass_period == e.period && pass_player != e.player_id) {
        e.timestamp_s = pass_t;
        ++stats.imputed;
      } else {
        ++stats.orphan_receptions;
      }
    }
    if (e.kind == EventKind::Pass && e.outcome && e.timestamp_s) {
      pass_period = e.period;
      pass_t = *e.timestamp_s;
      pass_player = e.player_id;
      have_pass = true;
    }
  }
  return stats;
}

FramePoint to_standard_frame(double x_pct, double y_pct, const Venue& venue) {
  if (!(x_pct >= 0.0 && x_pct <= 100.0 && y_pct >= 0.0 && y_pct <= 100.0))
    throw std::out_of_range("percent coordinate out of range");
  FramePoint p;
  p.x_m = x_pct / 100.0 * kStandardPitchLength;
  p.y_m = y_pct / 100.0 * kStandardPitchWidth;
  p.xv_m = x_pct / 100.0 * venue.length_m;
  p.yv_m = y_pct / 100.0 * venue.width_m;
  return p;
}

double movement_speed_kmh(double x1_pct, double y1_pct, double x2_pct,
                          double y2_pct, const Venue& venue, int dt_s) {
  if (dt_s <= 0) throw std::invalid_argument("dt must be positive");
  const double dx = (x2_pct - x1_pct) / 100.0 * venue.length_m;
  const double dy = (y2_pct - y1_pct) / 100.0 * venue.width_m;
  return 3.6 * std::sqrt(dx * dx + dy * dy) / static_cast<double>(dt_s);
}

const PossessionTable& PossessionTable::standard() {
  static const PossessionTable table = [] {
    PossessionTable t{};
    auto idx = [](EventKind k) { return static_cast<std::size_t>(k); };
    t.start[idx(EventKind::Reception)] = true;
    t.start[idx(EventKind::Recovery)] = true;
    t.start[idx(EventKind::Interception)] = true;
    t.start[idx(EventKind::Dribble)] = true;
    t.end[idx(EventKind::Pass)] = true;
    t.end[idx(EventKind::Shot)] = true;
    t.end[idx(EventKind::Dribble)] = true;
    t.end[idx(EventKind::Clearance)] = true;
    t.end[idx(EventKind::FoulWon)] = true;
    t.end[idx(EventKind::CornerTaken)] = true;
    return t;
  }();
  return table;
}

bool possession_flag(EventKind start_kind, EventKind end_kind,
                     const PossessionTable& table) {
  return table.start[static_cast<std::size_t>(start_kind)] &&
         table.end[static_cast<std::size_t>(end_kind)];
}

std::vector<MovementVector> extract_movements(const Match& match,
                                              const Venue& venue,
                                              const ExtractOptions& opts,
                                              ExtractStats* stats) {
  ExtractStats local;
  ExtractStats& st = stats ? *stats : local;
  st = ExtractStats{};

  std::map<std::string, std::vector<const Event*>> by_player;
  for (const auto& e : match.events) by_player[e.player_id].push_back(&e);

  std::vector<MovementVector> out;
  for (const auto& [player_id, events] : by_player) {
    for (std::size_t i = 0; i + 1 < events.size(); ++i) {
      const Event& a = *events[i];
      const Event& b = *events[i + 1];
      if (a.period != b.period) continue;
      ++st.pairs_considered;
      if (!a.timestamp_s || !b.timestamp_s) {
        ++st.dropped_missing_timestamp;
        continue;
      }
      const int dt = *b.timestamp_s - *a.timestamp_s;
      if (dt <= 0) {
        ++st.dropped_zero_dt;
        continue;
      }
      if (opts.max_gap_s > 0 && dt > opts.max_gap_s) {
        ++st.dropped_over_gap;
        continue;
      }
      const FramePoint p1 = to_standard_frame(a.x_pct, a.y_pct, venue);
      const FramePoint p2 = to_standard_frame(b.x_pct, b.y_pct, venue);
      MovementVector v;
      v.match_id = match.match_id;
      v.player_id = player_id;
      v.start_s = *a.timestamp_s;
      v.duration_s = dt;
      v.x1_m = p1.x_m;
      v.y1_m = p1.y_m;
      v.x2_m = p2.x_m;
      v.y2_m = p2.y_m;
      v.speed_kmh =
          movement_speed_kmh(a.x_pct, a.y_pct, b.x_pct, b.y_pct, venue, dt);
      v.with_ball = possession_flag(a.kind, b.kind, opts.possession);
      out.push_back(v);
    }
  }

  std::sort(out.begin(), out.end(),
            [](const MovementVector& a, const MovementVector& b) {
              if (a.match_id != b.match_id) return a.match_id < b.match_id;
              if (a.player_id != b.player_id) return a.player_id < b.player_id;
              if (a.start_s != b.start_s) return a.start_s < b.start_s;
              return a.duration_s < b.duration_s;
            });
  return out;
}

std::vector<MovementVector> filter_speed(std::vector<MovementVector> movements,
                                         double threshold_kmh) {
  if (threshold_kmh < 0.0) throw std::invalid_argument("negative speed threshold");
  std::erase_if(movements, [threshold_kmh](const MovementVector& m) {
    return m.speed_kmh < threshold_kmh;
  });
  return movements;
}

void write_movements_csv(std::ostream& out,
                         const std::vector<MovementVector>& movements) {
  out << "match_id,player_id,T,dt,x1,y1,x2,y2,speed_kmh,ball\n";
  std::string line;
  for (const auto& m : movements) {
    line.clear();
    csv::append_field(line, m.match_id);
    csv::append_field(line, m.player_id);
    csv::append_field(line, std::to_string(m.start_s));
    csv::append_field(line, std::to_string(m.duration_s));
    csv::append_field(line, csv::format_fixed(m.x1_m, 6));
    csv::append_field(line, csv::format_fixed(m.y1_m, 6));
    csv::append_field(line, csv::format_fixed(m.x2_m, 6));
    csv::append_field(line, csv::format_fixed(m.y2_m, 6));
    csv::append_field(line, csv::format_fixed(m.speed_kmh, 6));
    csv::append_field(line, m.with_ball ? "1" : "0");
    out << line << '\n';
  }
}

std::vector<MovementVector> read_movements_csv(std::istream& in) {
  if (!in) throw std::runtime_error("cannot read movement store");
  std::vector<MovementVector> out;
  std::string line;
  std::size_t line_no = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line.rfind("match_id,", 0) == 0) continue;
    }
    const auto cols = csv::split_line(line);
    if (cols.size() != 10)
      throw std::runtime_error("movement store line " + std::to_string(line_no) +
                               ": expected 10 columns");
    auto as_int = [&](const std::string& s) {
      const auto v = csv::parse_int(s);
      if (!v)
        throw std::runtime_error("movement store line " + std::to_string(line_no) +
                                 ": bad integer '" + s + "'");
      return static_cast<int>(*v);
    };
    auto as_double = [&](const std::string& s) {
      const auto v = csv::parse_double(s);
      if (!v)
        throw std::runtime_error("movement store line " + std::to_string(line_no) +
                                 ": bad number '" + s + "'");
      return *v;
    };
    MovementVector m;
    m.match_id = cols[0];
    m.player_id = cols[1];
    m.start_s = as_int(cols[2]);
    m.duration_s = as_int(cols[3]);
    m.x1_m = as_double(cols[4]);
    m.y1_m = as_double(cols[5]);
    m.x2_m = as_double(cols[6]);
    m.y2_m = as_double(cols[7]);
    m.speed_kmh = as_double(cols[8]);
    if (cols[9] == "1") m.with_ball = true;
    else if (cols[9] == "0") m.with_ball = false;
    else
      throw std::runtime_error("movement store line " + std::to_string(line_no) +
                               ": bad ball flag '" + cols[9] + "'");
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace moveprint
