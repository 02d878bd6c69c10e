#ifndef MOVEPRINT_INGEST_HPP
#define MOVEPRINT_INGEST_HPP

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "moveprint/types.hpp"

namespace moveprint {

enum class LogFormat { Jsonl, Csv };

struct RejectedRow {
  std::size_t line_no = 0;  // 1-based position in the input
  std::string reason;
  std::string raw;
};

struct ParseReport {
  std::vector<Match> matches;  // sorted by match_id, events canonically sorted
  std::vector<RejectedRow> rejects;
  std::size_t rows_total = 0;  // data rows seen (header and blank lines excluded)
};

// Parses an event log. Malformed rows land in the rejects report instead of
// being dropped; more than 10% rejected rows (or an unreadable stream) throws
// std::runtime_error.
ParseReport parse_event_log(std::istream& in, LogFormat format);

// Sorts a match's events into canonical order: (period, timestamp, input
// order), unstamped events inheriting the previous timestamp for ordering.
void canonicalize_match(Match& match);

// Canonical serialization: one JSON object per line, alphabetical keys,
// events in canonical order. parse -> serialize is idempotent.
void write_canonical_jsonl(std::ostream& out, const std::vector<Match>& matches);
std::string canonical_jsonl(const std::vector<Match>& matches);

// Venue dimensions keyed by opaque id. Lookups never fail: unregistered ids
// fall back to the 105x68 standard pitch.
class VenueRegistry {
 public:
  static VenueRegistry load_csv(std::istream& in);

  void add(Venue venue);
  Venue lookup(const std::string& venue_id) const;
  Venue lookup(const std::string& venue_id, bool& found) const;
  std::size_t size() const { return venues_.size(); }

 private:
  std::map<std::string, Venue> venues_;
};

}  // namespace moveprint

#endif  // MOVEPRINT_INGEST_HPP
