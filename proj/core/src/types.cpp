#include "moveprint/types.hpp"

#include <cmath>

namespace moveprint {

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Pass: return "pass";
    case EventKind::Reception: return "reception";
    case EventKind::Shot: return "shot";
    case EventKind::Dribble: return "dribble";
    case EventKind::Tackle: return "tackle";
    case EventKind::Interception: return "interception";
    case EventKind::Recovery: return "recovery";
    case EventKind::Clearance: return "clearance";
    case EventKind::FoulWon: return "foul_won";
    case EventKind::FoulCommitted: return "foul_committed";
    case EventKind::CornerTaken: return "corner_taken";
    case EventKind::Other: return "other";
  }
  return "other";
}

EventKind event_kind_from_string(std::string_view name) {
  if (name == "pass") return EventKind::Pass;
  if (name == "reception") return EventKind::Reception;
  if (name == "shot") return EventKind::Shot;
  if (name == "dribble") return EventKind::Dribble;
  if (name == "tackle") return EventKind::Tackle;
  if (name == "interception") return EventKind::Interception;
  if (name == "recovery") return EventKind::Recovery;
  if (name == "clearance") return EventKind::Clearance;
  if (name == "foul_won") return EventKind::FoulWon;
  if (name == "foul_committed") return EventKind::FoulCommitted;
  if (name == "corner_taken") return EventKind::CornerTaken;
  return EventKind::Other;
}

double MovementVector::length_m() const {
  const double dx = x2_m - x1_m;
  const double dy = y2_m - y1_m;
  return std::sqrt(dx * dx + dy * dy);
}

}  // namespace moveprint
