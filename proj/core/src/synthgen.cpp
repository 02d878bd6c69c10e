#include "moveprint/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "moveprint/extract.hpp"
#include "moveprint/ingest.hpp"
#include "moveprint/rng.hpp"

namespace moveprint {

namespace {

using nlohmann::json;

constexpr std::uint64_t kPlayerStream = 101;
constexpr std::uint64_t kMatchStream = 202;

constexpr int kPeriodOneStart = 0;
constexpr int kPeriodOneLast = 2699;
constexpr int kPeriodTwoStart = 2700;
constexpr int kPeriodTwoLast = 5399;

const EventKind kBallStart[] = {EventKind::Reception, EventKind::Recovery,
                                EventKind::Interception, EventKind::Dribble};
const EventKind kBallEnd[] = {EventKind::Pass,     EventKind::Shot,
                              EventKind::Dribble,  EventKind::Clearance,
                              EventKind::FoulWon,  EventKind::CornerTaken};
// Pairs that the possession table maps to false.
const std::pair<EventKind, EventKind> kNoBallPairs[] = {
    {EventKind::Pass, EventKind::Reception},
    {EventKind::Tackle, EventKind::Tackle},
    {EventKind::Reception, EventKind::Interception},
    {EventKind::Other, EventKind::Recovery},
    {EventKind::FoulCommitted, EventKind::Tackle}};

std::string padded_id(char prefix, int value, int digits) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%c%0*d", prefix, digits, value);
  return buf;
}

double coord_limit(std::size_t dim) {
  return dim % 2 == 0 ? kStandardPitchLength : kStandardPitchWidth;
}

void validate_spec(const SeasonSpec& spec) {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("season spec: " + msg); };
  if (spec.n_teams < 2 || spec.n_teams % 2 != 0)
    fail("n_teams must be even and at least 2");
  if (spec.n_teams > 99) fail("n_teams must be at most 99");
  if (spec.players_per_team < 1) fail("players_per_team must be positive");
  if (spec.extra_players < 0 || spec.extra_players > spec.n_teams)
    fail("extra_players must be between 0 and n_teams");
  if (spec.n_games < 1) fail("season must schedule at least one game");
  if (spec.total_players() > 9999) fail("at most 9999 players supported");
  if (spec.n_games * (spec.n_teams / 2) > 9999) fail("at most 9999 matches supported");
  if (spec.mean_jitter_m < 0.0) fail("mean_jitter_m must be non-negative");
  if (spec.weight_jitter_alpha < 0.0) fail("weight_jitter_alpha must be non-negative");
  if (spec.erratic_alpha <= 0.0) fail("erratic_alpha must be positive");
  if (spec.archetypes.empty()) fail("at least one archetype required");

  for (const auto& a : spec.archetypes) {
    if (a.mixture.empty()) fail("archetype '" + a.name + "' has an empty mixture");
    if (a.possession_prob < 0.0 || a.possession_prob > 1.0)
      fail("archetype '" + a.name + "' possession_prob outside [0,1]");
    if (a.movements_per_game_min < 1 ||
        a.movements_per_game_max < a.movements_per_game_min)
      fail("archetype '" + a.name + "' has a bad movements_per_game range");
    double weight_sum = 0.0;
    for (const auto& c : a.mixture) {
      if (c.weight <= 0.0) fail("archetype '" + a.name + "' has a non-positive weight");
      weight_sum += c.weight;
      for (std::size_t d = 0; d < 4; ++d) {
        if (c.sigma[d] < 0.0) fail("archetype '" + a.name + "' has a negative sigma");
        if (c.mean[d] < 0.0 || c.mean[d] > coord_limit(d))
          fail("archetype '" + a.name + "' has a mean outside the pitch");
      }
      if (c.speed_mean_kmh <= 0.0 || c.speed_sigma_kmh < 0.0)
        fail("archetype '" + a.name + "' has a bad speed distribution");
    }
    if (std::abs(weight_sum - 1.0) > 1e-6)
      fail("archetype '" + a.name + "' mixture weights must sum to 1");
  }

  if (!spec.assignment.empty()) {
    if (spec.assignment.size() != static_cast<std::size_t>(spec.total_players()))
      fail("assignment must list one archetype per player");
    for (const int a : spec.assignment)
      if (a < 0 || a >= static_cast<int>(spec.archetypes.size()))
        fail("assignment references an unknown archetype");
  }
}

struct PlayerCtx {
  PlayerTruth truth;
  const ArchetypeSpec* arch = nullptr;
};

std::size_t pick_weighted(const std::vector<double>& weights, Rng& rng) {
  double total = 0.0;
  for (const double w : weights) total += w;
  const double r = rng.uniform01() * total;
  double cum = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    cum += weights[i];
    if (r < cum) return i;
  }
  return weights.size() - 1;
}

// Plants one player's movements for one match. Consecutive planted pairs
// share a timestamp, so the only surviving extraction pairs are the planted
// ones; the half-time break isolates periods.
void plant_player_match(const SeasonSpec& spec, PlayerCtx& ctx, Match& match,
                        Rng& rng, std::vector<MovementVector>& planted) {
  const ArchetypeSpec& arch = *ctx.arch;
  const auto& mixture = ctx.truth.effective_mixture;
  const int target = rng.uniform_int(arch.movements_per_game_min,
                                     arch.movements_per_game_max);

  std::vector<double> weights(mixture.size());
  if (ctx.truth.erratic) {
    const std::vector<double> alpha(mixture.size(), spec.erratic_alpha);
    rng.dirichlet(alpha, weights);
  } else {
    for (std::size_t i = 0; i < mixture.size(); ++i) weights[i] = mixture[i].weight;
  }

  const Venue venue{};  // synthetic seasons play on the standard pitch
  const int halfway = (target + 1) / 2;
  int period = 1;
  int t = kPeriodOneStart;

  for (int j = 0; j < target; ++j) {
    if (j == halfway && period == 1) {
      period = 2;
      t = kPeriodTwoStart;
    }

    const ArchetypeComponent& comp = mixture[pick_weighted(weights, rng)];
    Point4 meters;
    for (std::size_t d = 0; d < 4; ++d) {
      const double v = comp.mean[d] + comp.sigma[d] * rng.normal();
      meters[d] = std::clamp(v, 0.0, coord_limit(d));
    }
    const double x1p = meters[0] / kStandardPitchLength * 100.0;
    const double y1p = meters[1] / kStandardPitchWidth * 100.0;
    const double x2p = meters[2] / kStandardPitchLength * 100.0;
    const double y2p = meters[3] / kStandardPitchWidth * 100.0;

    double target_speed = rng.normal(comp.speed_mean_kmh, comp.speed_sigma_kmh);
    if (target_speed < 0.5) target_speed = 0.5;
    const double dist_m = movement_speed_kmh(x1p, y1p, x2p, y2p, venue, 1) / 3.6;
    int dt = static_cast<int>(std::lround(3.6 * dist_m / target_speed));
    if (dt < 1) dt = 1;

    const int period_last = period == 1 ? kPeriodOneLast : kPeriodTwoLast;
    if (t + dt > period_last) {
      if (period == 1) {
        period = 2;
        t = kPeriodTwoStart;
        if (t + dt > kPeriodTwoLast) break;
      } else {
        break;
      }
    }

    const bool with_ball = rng.uniform01() < arch.possession_prob;
    EventKind start_kind, end_kind;
    if (with_ball) {
      start_kind = kBallStart[rng.below(std::size(kBallStart))];
      end_kind = kBallEnd[rng.below(std::size(kBallEnd))];
    } else {
      const auto& pair = kNoBallPairs[rng.below(std::size(kNoBallPairs))];
      start_kind = pair.first;
      end_kind = pair.second;
    }

    Event start;
    start.match_id = match.match_id;
    start.period = period;
    start.timestamp_s = t;
    start.team_id = ctx.truth.team_id;
    start.player_id = ctx.truth.player_id;
    start.kind = start_kind;
    start.x_pct = x1p;
    start.y_pct = y1p;
    Event end = start;
    end.timestamp_s = t + dt;
    end.kind = end_kind;
    end.x_pct = x2p;
    end.y_pct = y2p;
    match.events.push_back(std::move(start));
    match.events.push_back(std::move(end));

    const FramePoint p1 = to_standard_frame(x1p, y1p, venue);
    const FramePoint p2 = to_standard_frame(x2p, y2p, venue);
    MovementVector mv;
    mv.match_id = match.match_id;
    mv.player_id = ctx.truth.player_id;
    mv.start_s = t;
    mv.duration_s = dt;
    mv.x1_m = p1.x_m;
    mv.y1_m = p1.y_m;
    mv.x2_m = p2.x_m;
    mv.y2_m = p2.y_m;
    mv.speed_kmh = movement_speed_kmh(x1p, y1p, x2p, y2p, venue, dt);
    mv.with_ball = with_ball;
    planted.push_back(std::move(mv));

    t += dt;
    ++ctx.truth.n_planted;
  }
}

json component_to_json(const ArchetypeComponent& c) {
  json j;
  j["mean"] = {c.mean[0], c.mean[1], c.mean[2], c.mean[3]};
  j["sigma"] = {c.sigma[0], c.sigma[1], c.sigma[2], c.sigma[3]};
  j["weight"] = c.weight;
  j["speed_mean_kmh"] = c.speed_mean_kmh;
  j["speed_sigma_kmh"] = c.speed_sigma_kmh;
  return j;
}

ArchetypeComponent component_from_json(const json& j) {
  ArchetypeComponent c;
  const auto& mean = j.at("mean");
  const auto& sigma = j.at("sigma");
  if (!mean.is_array() || mean.size() != 4 || !sigma.is_array() || sigma.size() != 4)
    throw std::runtime_error("mixture components need 4-entry mean and sigma");
  for (std::size_t d = 0; d < 4; ++d) {
    c.mean[d] = mean[d].get<double>();
    c.sigma[d] = sigma[d].get<double>();
  }
  c.weight = j.at("weight").get<double>();
  c.speed_mean_kmh = j.value("speed_mean_kmh", 15.0);
  c.speed_sigma_kmh = j.value("speed_sigma_kmh", 2.5);
  return c;
}

}  // namespace

SeasonTruth generate_season(const SeasonSpec& spec) {
  validate_spec(spec);

  const int total = spec.total_players();
  std::vector<PlayerCtx> players(static_cast<std::size_t>(total));
  std::vector<std::vector<int>> team_rosters(static_cast<std::size_t>(spec.n_teams));
  std::map<std::string, int> index_of;

  int next_player = 0;
  for (int team = 0; team < spec.n_teams; ++team) {
    const int roster = spec.players_per_team + (team < spec.extra_players ? 1 : 0);
    for (int j = 0; j < roster; ++j, ++next_player) {
      PlayerCtx& ctx = players[static_cast<std::size_t>(next_player)];
      ctx.truth.player_id = padded_id('p', next_player, 4);
      ctx.truth.team_id = padded_id('t', team, 2);
      team_rosters[static_cast<std::size_t>(team)].push_back(next_player);
      index_of[ctx.truth.player_id] = next_player;
    }
  }

  for (int i = 0; i < total; ++i) {
    PlayerCtx& ctx = players[static_cast<std::size_t>(i)];
    const int arch_index =
        spec.assignment.empty()
            ? i % static_cast<int>(spec.archetypes.size())
            : spec.assignment[static_cast<std::size_t>(i)];
    const ArchetypeSpec& arch = spec.archetypes[static_cast<std::size_t>(arch_index)];
    ctx.arch = &arch;
    ctx.truth.archetype = arch.name;
    ctx.truth.effective_mixture = arch.mixture;

    Rng rng(split_seed(spec.seed, kPlayerStream, static_cast<std::uint64_t>(i)));
    for (auto& comp : ctx.truth.effective_mixture) {
      for (std::size_t d = 0; d < 4; ++d) {
        const double v = comp.mean[d] + rng.normal(0.0, spec.mean_jitter_m);
        comp.mean[d] = std::clamp(v, 0.0, coord_limit(d));
      }
    }
    if (spec.weight_jitter_alpha > 0.0 && ctx.truth.effective_mixture.size() > 1) {
      std::vector<double> alpha, weights(ctx.truth.effective_mixture.size());
      for (const auto& comp : ctx.truth.effective_mixture)
        alpha.push_back(spec.weight_jitter_alpha * comp.weight);
      rng.dirichlet(alpha, weights);
      for (std::size_t c = 0; c < weights.size(); ++c)
        ctx.truth.effective_mixture[c].weight = weights[c];
    }
  }

  for (const auto& [a, b] : spec.clones) {
    const auto ia = index_of.find(a);
    const auto ib = index_of.find(b);
    if (ia == index_of.end() || ib == index_of.end())
      throw std::invalid_argument("season spec: clone pair references unknown player");
    if (ia->second == ib->second)
      throw std::invalid_argument("season spec: clone pair must name distinct players");
    PlayerCtx& src = players[static_cast<std::size_t>(ia->second)];
    PlayerCtx& dst = players[static_cast<std::size_t>(ib->second)];
    dst.truth.effective_mixture = src.truth.effective_mixture;
    dst.truth.archetype = src.truth.archetype;
    dst.arch = src.arch;
    dst.truth.clone_of = a;
  }

  for (const auto& id : spec.erratic) {
    const auto it = index_of.find(id);
    if (it == index_of.end())
      throw std::invalid_argument("season spec: erratic list references unknown player");
    players[static_cast<std::size_t>(it->second)].truth.erratic = true;
  }

  SeasonTruth truth;
  const int rounds_per_cycle = spec.n_teams - 1;
  const int matches_per_round = spec.n_teams / 2;
  int match_index = 0;
  for (int round = 0; round < spec.n_games; ++round) {
    const int r = rounds_per_cycle == 1 ? 0 : round % rounds_per_cycle;
    std::vector<int> slot(static_cast<std::size_t>(spec.n_teams));
    slot[0] = 0;
    for (int k = 1; k < spec.n_teams; ++k)
      slot[static_cast<std::size_t>(k)] = 1 + (k - 1 + r) % rounds_per_cycle;

    for (int j = 0; j < matches_per_round; ++j, ++match_index) {
      const int t1 = slot[static_cast<std::size_t>(j)];
      const int t2 = slot[static_cast<std::size_t>(spec.n_teams - 1 - j)];
      Match match;
      match.match_id = padded_id('m', match_index, 4);
      match.home_team_id = padded_id('t', std::min(t1, t2), 2);
      match.away_team_id = padded_id('t', std::max(t1, t2), 2);

      Rng rng(split_seed(spec.seed, kMatchStream,
                         static_cast<std::uint64_t>(match_index)));
      for (const int team : {std::min(t1, t2), std::max(t1, t2)}) {
        for (const int p : team_rosters[static_cast<std::size_t>(team)])
          plant_player_match(spec, players[static_cast<std::size_t>(p)], match,
                             rng, truth.planted);
      }
      canonicalize_match(match);
      truth.matches.push_back(std::move(match));
    }
  }

  std::sort(truth.matches.begin(), truth.matches.end(),
            [](const Match& a, const Match& b) { return a.match_id < b.match_id; });
  std::sort(truth.planted.begin(), truth.planted.end(),
            [](const MovementVector& a, const MovementVector& b) {
              if (a.match_id != b.match_id) return a.match_id < b.match_id;
              if (a.player_id != b.player_id) return a.player_id < b.player_id;
              if (a.start_s != b.start_s) return a.start_s < b.start_s;
              return a.duration_s < b.duration_s;
            });

  truth.players.reserve(players.size());
  for (auto& ctx : players) truth.players.push_back(std::move(ctx.truth));
  return truth;
}

SeasonSpec scale_preset(const std::string& name) {
  if (name != "paper")
    throw std::invalid_argument("unknown scale preset '" + name + "'");

  SeasonSpec spec;
  spec.n_teams = 20;
  spec.players_per_team = 27;
  spec.extra_players = 2;  // 20*27 + 2 = 542
  spec.n_games = 38;
  spec.seed = 42;

  auto arch = [](std::string name, double possession,
                 std::vector<ArchetypeComponent> mixture) {
    ArchetypeSpec a;
    a.name = std::move(name);
    a.possession_prob = possession;
    a.movements_per_game_min = 26;
    a.movements_per_game_max = 38;
    a.mixture = std::move(mixture);
    return a;
  };
  auto comp = [](Point4 mean, double weight, double speed_mean) {
    ArchetypeComponent c;
    c.mean = mean;
    c.sigma = {2.0, 2.0, 2.0, 2.0};
    c.weight = weight;
    c.speed_mean_kmh = speed_mean;
    c.speed_sigma_kmh = 2.5;
    return c;
  };

  spec.archetypes.push_back(arch("winger_left", 0.55,
                                 {comp({22, 10, 42, 8}, 0.40, 17.0),
                                  comp({58, 8, 76, 14}, 0.35, 19.0),
                                  comp({78, 12, 90, 22}, 0.25, 16.0)}));
  spec.archetypes.push_back(arch("winger_right", 0.55,
                                 {comp({22, 58, 42, 60}, 0.40, 17.0),
                                  comp({58, 60, 76, 54}, 0.35, 19.0),
                                  comp({78, 56, 90, 46}, 0.25, 16.0)}));
  spec.archetypes.push_back(arch("striker", 0.60,
                                 {comp({55, 30, 73, 36}, 0.35, 18.0),
                                  comp({68, 42, 87, 35}, 0.35, 19.0),
                                  comp({83, 28, 96, 39}, 0.30, 20.0)}));
  spec.archetypes.push_back(arch("box_to_box", 0.50,
                                 {comp({34, 24, 54, 32}, 0.40, 15.0),
                                  comp({50, 40, 68, 30}, 0.30, 16.0),
                                  comp({28, 44, 44, 37}, 0.30, 14.0)}));
  spec.archetypes.push_back(arch("anchor", 0.45,
                                 {comp({30, 30, 46, 36}, 0.40, 13.0),
                                  comp({46, 24, 31, 33}, 0.30, 12.5),
                                  comp({38, 42, 54, 35}, 0.30, 13.5)}));
  spec.archetypes.push_back(arch("fullback", 0.50,
                                 {comp({14, 8, 34, 12}, 0.35, 16.0),
                                  comp({40, 10, 58, 7}, 0.35, 17.0),
                                  comp({12, 56, 31, 61}, 0.30, 15.0)}));
  return spec;
}

SeasonSpec read_season_spec_json(std::istream& in) {
  json j;
  try {
    in >> j;
  } catch (const json::exception&) {
    throw std::runtime_error("season spec is not valid JSON");
  }
  if (!j.is_object()) throw std::runtime_error("season spec must be a JSON object");

  SeasonSpec spec;
  try {
    spec.n_teams = j.value("n_teams", spec.n_teams);
    spec.players_per_team = j.value("players_per_team", spec.players_per_team);
    spec.extra_players = j.value("extra_players", spec.extra_players);
    spec.n_games = j.value("n_games", spec.n_games);
    spec.seed = j.value("seed", spec.seed);
    spec.mean_jitter_m = j.value("mean_jitter_m", spec.mean_jitter_m);
    spec.weight_jitter_alpha = j.value("weight_jitter_alpha", spec.weight_jitter_alpha);
    spec.erratic_alpha = j.value("erratic_alpha", spec.erratic_alpha);

    for (const auto& aj : j.at("archetypes")) {
      ArchetypeSpec a;
      a.name = aj.value("name", std::string());
      a.possession_prob = aj.value("possession_prob", a.possession_prob);
      if (const auto it = aj.find("movements_per_game"); it != aj.end()) {
        if (!it->is_array() || it->size() != 2)
          throw std::runtime_error("movements_per_game must be [min, max]");
        a.movements_per_game_min = (*it)[0].get<int>();
        a.movements_per_game_max = (*it)[1].get<int>();
      }
      for (const auto& cj : aj.at("mixture")) a.mixture.push_back(component_from_json(cj));
      spec.archetypes.push_back(std::move(a));
    }

    if (const auto it = j.find("assignment"); it != j.end())
      spec.assignment = it->get<std::vector<int>>();
    if (const auto it = j.find("clones"); it != j.end()) {
      for (const auto& pair : *it) {
        if (!pair.is_array() || pair.size() != 2)
          throw std::runtime_error("clone entries must be [a, b] pairs");
        spec.clones.emplace_back(pair[0].get<std::string>(),
                                 pair[1].get<std::string>());
      }
    }
    if (const auto it = j.find("erratic"); it != j.end())
      spec.erratic = it->get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed season spec: ") + e.what());
  }
  return spec;
}

void write_season_spec_json(std::ostream& out, const SeasonSpec& spec) {
  json j;
  j["n_teams"] = spec.n_teams;
  j["players_per_team"] = spec.players_per_team;
  j["extra_players"] = spec.extra_players;
  j["n_games"] = spec.n_games;
  j["seed"] = spec.seed;
  j["mean_jitter_m"] = spec.mean_jitter_m;
  j["weight_jitter_alpha"] = spec.weight_jitter_alpha;
  j["erratic_alpha"] = spec.erratic_alpha;
  auto& archetypes = j["archetypes"];
  archetypes = json::array();
  for (const auto& a : spec.archetypes) {
    json aj;
    aj["name"] = a.name;
    aj["possession_prob"] = a.possession_prob;
    aj["movements_per_game"] = {a.movements_per_game_min, a.movements_per_game_max};
    auto& mixture = aj["mixture"];
    mixture = json::array();
    for (const auto& c : a.mixture) mixture.push_back(component_to_json(c));
    archetypes.push_back(std::move(aj));
  }
  if (!spec.assignment.empty()) j["assignment"] = spec.assignment;
  if (!spec.clones.empty()) {
    auto& clones = j["clones"];
    clones = json::array();
    for (const auto& [a, b] : spec.clones) clones.push_back({a, b});
  }
  if (!spec.erratic.empty()) j["erratic"] = spec.erratic;
  out << j.dump(2) << '\n';
}

void write_truth_json(std::ostream& out, const SeasonTruth& truth) {
  json j;
  j["n_players"] = truth.players.size();
  j["n_matches"] = truth.matches.size();
  j["total_planted"] = truth.planted.size();
  auto& players = j["players"];
  players = json::array();
  for (const auto& p : truth.players) {
    json pj;
    pj["player_id"] = p.player_id;
    pj["team_id"] = p.team_id;
    pj["archetype"] = p.archetype;
    pj["clone_of"] = p.clone_of;
    pj["erratic"] = p.erratic;
    pj["n_planted"] = p.n_planted;
    auto& mixture = pj["mixture"];
    mixture = json::array();
    for (const auto& c : p.effective_mixture) mixture.push_back(component_to_json(c));
    players.push_back(std::move(pj));
  }
  out << j.dump() << '\n';
}

}  // namespace moveprint
