#include "moveprint/ingest.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "moveprint/csv.hpp"

namespace moveprint {

namespace {

using nlohmann::json;

struct PendingRow {
  Event event;
  std::size_t line_no = 0;
  std::string raw;
};

// Returns an error reason, or empty when the event passed all row checks.
std::string validate_event(const Event& e, bool has_timestamp) {
  if (e.match_id.empty()) return "empty id: match_id";
  if (e.team_id.empty()) return "empty id: team";
  if (e.player_id.empty()) return "empty id: player";
  if (e.period != 1 && e.period != 2) return "invalid period";
  if (has_timestamp && *e.timestamp_s < 0) return "negative timestamp";
  if (!has_timestamp && e.kind != EventKind::Reception) return "missing timestamp";
  if (!(e.x_pct >= 0.0 && e.x_pct <= 100.0 && e.y_pct >= 0.0 && e.y_pct <= 100.0))
    return "coordinate out of range";
  return {};
}

bool parse_jsonl_row(const std::string& line, Event& out, std::string& reason) {
  const json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    reason = "invalid JSON";
    return false;
  }

  auto need = [&](const char* key) -> const json* {
    const auto it = j.find(key);
    if (it == j.end() || it->is_null()) {
      reason = std::string("missing field: ") + key;
      return nullptr;
    }
    return &*it;
  };

  const json* f = nullptr;
  if (!(f = need("match_id"))) return false;
  if (!f->is_string()) { reason = "wrong type: match_id"; return false; }
  out.match_id = f->get<std::string>();

  if (!(f = need("period"))) return false;
  if (!f->is_number_integer()) { reason = "wrong type: period"; return false; }
  out.period = f->get<int>();

  if (const auto it = j.find("t"); it != j.end() && !it->is_null()) {
    if (!it->is_number_integer()) { reason = "wrong type: t"; return false; }
    out.timestamp_s = it->get<int>();
  } else {
    out.timestamp_s.reset();
  }

  if (!(f = need("team"))) return false;
  if (!f->is_string()) { reason = "wrong type: team"; return false; }
  out.team_id = f->get<std::string>();

  if (!(f = need("player"))) return false;
  if (!f->is_string()) { reason = "wrong type: player"; return false; }
  out.player_id = f->get<std::string>();

  if (!(f = need("kind"))) return false;
  if (!f->is_string()) { reason = "wrong type: kind"; return false; }
  out.kind = event_kind_from_string(f->get<std::string>());

  if (!(f = need("x"))) return false;
  if (!f->is_number()) { reason = "wrong type: x"; return false; }
  out.x_pct = f->get<double>();

  if (!(f = need("y"))) return false;
  if (!f->is_number()) { reason = "wrong type: y"; return false; }
  out.y_pct = f->get<double>();

  if (!(f = need("outcome"))) return false;
  if (!f->is_boolean()) { reason = "wrong type: outcome"; return false; }
  out.outcome = f->get<bool>();

  if (const auto it = j.find("venue"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) { reason = "wrong type: venue"; return false; }
    out.venue_id = it->get<std::string>();
  }

  reason = validate_event(out, out.timestamp_s.has_value());
  return reason.empty();
}

struct CsvHeader {
  int match_id = -1, period = -1, t = -1, team = -1, player = -1;
  int kind = -1, x = -1, y = -1, outcome = -1, venue = -1;
};

CsvHeader parse_csv_header(const std::string& line) {
  CsvHeader h;
  const auto cols = csv::split_line(line);
  for (int i = 0; i < static_cast<int>(cols.size()); ++i) {
    const auto& c = cols[static_cast<std::size_t>(i)];
    if (c == "match_id") h.match_id = i;
    else if (c == "period") h.period = i;
    else if (c == "t") h.t = i;
    else if (c == "team") h.team = i;
    else if (c == "player") h.player = i;
    else if (c == "kind") h.kind = i;
    else if (c == "x") h.x = i;
    else if (c == "y") h.y = i;
    else if (c == "outcome") h.outcome = i;
    else if (c == "venue") h.venue = i;
  }
  auto missing = [&](int idx, const char* name) {
    if (idx < 0) throw std::runtime_error(std::string("event CSV missing column: ") + name);
  };
  missing(h.match_id, "match_id");
  missing(h.period, "period");
  missing(h.t, "t");
  missing(h.team, "team");
  missing(h.player, "player");
  missing(h.kind, "kind");
  missing(h.x, "x");
  missing(h.y, "y");
  missing(h.outcome, "outcome");
  return h;
}

bool parse_csv_row(const std::string& line, const CsvHeader& h, Event& out,
                   std::string& reason) {
  const auto cols = csv::split_line(line);
  const int ncols = static_cast<int>(cols.size());
  auto field = [&](int idx) -> const std::string& {
    static const std::string empty;
    return idx >= 0 && idx < ncols ? cols[static_cast<std::size_t>(idx)] : empty;
  };

  if (h.match_id >= ncols || h.period >= ncols || h.team >= ncols ||
      h.player >= ncols || h.kind >= ncols || h.x >= ncols || h.y >= ncols ||
      h.outcome >= ncols) {
    reason = "short row";
    return false;
  }

  out.match_id = field(h.match_id);
  out.team_id = field(h.team);
  out.player_id = field(h.player);
  out.kind = event_kind_from_string(field(h.kind));
  out.venue_id = field(h.venue);

  const auto period = csv::parse_int(field(h.period));
  if (!period) { reason = "wrong type: period"; return false; }
  out.period = static_cast<int>(*period);

  if (const auto& tf = field(h.t); tf.empty()) {
    out.timestamp_s.reset();
  } else {
    const auto t = csv::parse_int(tf);
    if (!t) { reason = "wrong type: t"; return false; }
    out.timestamp_s = static_cast<int>(*t);
  }

  const auto x = csv::parse_double(field(h.x));
  if (!x) { reason = "wrong type: x"; return false; }
  out.x_pct = *x;

  const auto y = csv::parse_double(field(h.y));
  if (!y) { reason = "wrong type: y"; return false; }
  out.y_pct = *y;

  if (const auto& of = field(h.outcome); of == "true") {
    out.outcome = true;
  } else if (of == "false") {
    out.outcome = false;
  } else {
    reason = "wrong type: outcome";
    return false;
  }

  reason = validate_event(out, out.timestamp_s.has_value());
  return reason.empty();
}

}  // namespace

// Canonical event order within a match: (period, timestamp, input order).
// Events without a timestamp inherit the last timestamp seen in input order,
// which keeps a pass and its unstamped reception adjacent.
void canonicalize_match(Match& match) {
  struct Keyed {
    Event event;
    int eff_t;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(match.events.size());
  int carry = 0;
  for (auto& event : match.events) {
    if (event.timestamp_s) carry = *event.timestamp_s;
    keyed.push_back({std::move(event), carry});
  }
  std::stable_sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    if (a.event.period != b.event.period) return a.event.period < b.event.period;
    return a.eff_t < b.eff_t;
  });
  match.events.clear();
  for (auto& k : keyed) match.events.push_back(std::move(k.event));
}

ParseReport parse_event_log(std::istream& in, LogFormat format) {
  if (!in) throw std::runtime_error("cannot read event log stream");

  ParseReport report;
  std::unordered_map<std::string, std::vector<PendingRow>> by_match;

  std::string line;
  std::size_t line_no = 0;
  bool have_header = format != LogFormat::Csv;
  CsvHeader header;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!have_header) {
      header = parse_csv_header(line);
      have_header = true;
      continue;
    }

    ++report.rows_total;
    Event event;
    std::string reason;
    const bool ok = format == LogFormat::Jsonl
                        ? parse_jsonl_row(line, event, reason)
                        : parse_csv_row(line, header, event, reason);
    if (!ok) {
      report.rejects.push_back({line_no, std::move(reason), line});
      continue;
    }
    by_match[event.match_id].push_back({std::move(event), line_no, line});
  }
  if (in.bad()) throw std::runtime_error("I/O error while reading event log");

  for (auto& [match_id, rows] : by_match) {
    // A match admits at most two teams; rows from any further team id are
    // rejected deterministically (order-insensitive tie rule).
    std::set<std::string> teams;
    for (const auto& r : rows) teams.insert(r.event.team_id);
    std::set<std::string> kept_teams;
    for (const auto& t : teams) {
      if (kept_teams.size() == 2) break;
      kept_teams.insert(t);
    }

    Match match;
    match.match_id = match_id;
    match.home_team_id = kept_teams.empty() ? "" : *kept_teams.begin();
    match.away_team_id = kept_teams.empty() ? "" : *kept_teams.rbegin();

    std::set<std::string> venues;
    for (auto& r : rows) {
      if (kept_teams.count(r.event.team_id) == 0) {
        report.rejects.push_back({r.line_no, "more than two teams in match", std::move(r.raw)});
        continue;
      }
      if (!r.event.venue_id.empty()) venues.insert(r.event.venue_id);
      match.events.push_back(std::move(r.event));
    }
    if (!venues.empty()) match.venue_id = *venues.begin();

    canonicalize_match(match);
    if (!match.events.empty()) report.matches.push_back(std::move(match));
  }

  std::sort(report.matches.begin(), report.matches.end(),
            [](const Match& a, const Match& b) { return a.match_id < b.match_id; });

  if (report.rejects.size() * 10 > report.rows_total) {
    throw std::runtime_error("more than 10% of rows rejected (" +
                             std::to_string(report.rejects.size()) + " of " +
                             std::to_string(report.rows_total) + ")");
  }
  return report;
}

void write_canonical_jsonl(std::ostream& out, const std::vector<Match>& matches) {
  for (const auto& match : matches) {
    for (const auto& e : match.events) {
      json j;
      j["kind"] = std::string(to_string(e.kind));
      j["match_id"] = e.match_id;
      j["outcome"] = e.outcome;
      j["period"] = e.period;
      j["player"] = e.player_id;
      if (e.timestamp_s) j["t"] = *e.timestamp_s;
      j["team"] = e.team_id;
      if (!match.venue_id.empty()) j["venue"] = match.venue_id;
      j["x"] = e.x_pct;
      j["y"] = e.y_pct;
      out << j.dump() << '\n';
    }
  }
}

std::string canonical_jsonl(const std::vector<Match>& matches) {
  std::ostringstream out;
  write_canonical_jsonl(out, matches);
  return out.str();
}

VenueRegistry VenueRegistry::load_csv(std::istream& in) {
  if (!in) throw std::runtime_error("cannot read venue registry");
  VenueRegistry registry;
  std::string line;
  bool first = true;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first && line.rfind("venue_id", 0) == 0) {
      first = false;
      continue;
    }
    first = false;
    const auto cols = csv::split_line(line);
    if (cols.size() != 3)
      throw std::runtime_error("venue registry line " + std::to_string(line_no) +
                               ": expected venue_id,length_m,width_m");
    const auto length = csv::parse_double(cols[1]);
    const auto width = csv::parse_double(cols[2]);
    if (cols[0].empty() || !length || !width)
      throw std::runtime_error("venue registry line " + std::to_string(line_no) +
                               ": malformed row");
    Venue v{cols[0], *length, *width};
    if (v.length_m < 90.0 || v.length_m > 120.0 || v.width_m < 45.0 ||
        v.width_m > 90.0 || v.length_m <= v.width_m)
      throw std::runtime_error("venue registry line " + std::to_string(line_no) +
                               ": dimensions out of range");
    registry.add(std::move(v));
  }
  return registry;
}

void VenueRegistry::add(Venue venue) {
  venues_[venue.venue_id] = std::move(venue);
}

Venue VenueRegistry::lookup(const std::string& venue_id) const {
  bool found = false;
  return lookup(venue_id, found);
}

Venue VenueRegistry::lookup(const std::string& venue_id, bool& found) const {
  const auto it = venues_.find(venue_id);
  if (it != venues_.end()) {
    found = true;
    return it->second;
  }
  found = false;
  return Venue{venue_id, kStandardPitchLength, kStandardPitchWidth};
}

}  // namespace moveprint
