#include "moveprint/profile.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>

#include "moveprint/csv.hpp"

namespace moveprint {

bool ProfileFilter::keeps(const MovementVector& m) const {
  switch (kind) {
    case FilterKind::All:
      return true;
    case FilterKind::WithBall:
      return m.with_ball;
    case FilterKind::HighSpeed:
      return m.speed_kmh >= speed_threshold_kmh;
  }
  return true;
}

std::string ProfileFilter::label() const {
  switch (kind) {
    case FilterKind::All:
      return "all";
    case FilterKind::WithBall:
      return "ball";
    case FilterKind::HighSpeed:
      return "speed:" + csv::format_double(speed_threshold_kmh);
  }
  return "all";
}

ProfileFilter ProfileFilter::parse(const std::string& token) {
  ProfileFilter f;
  if (token == "all") return f;
  if (token == "ball") {
    f.kind = FilterKind::WithBall;
    return f;
  }
  if (token == "speed" || token.rfind("speed:", 0) == 0) {
    f.kind = FilterKind::HighSpeed;
    if (token.size() > 6) {
      const auto value = csv::parse_double(token.substr(6));
      if (!value || *value < 0.0)
        throw std::invalid_argument("bad speed threshold in filter: " + token);
      f.speed_threshold_kmh = *value;
    }
    return f;
  }
  throw std::invalid_argument("unknown filter: " + token +
                              " (expected all | ball | speed[:threshold])");
}

CharacteristicVector build_characteristic(
    const std::vector<MovementVector>& movements, const ClusterModel& model,
    const ProfileFilter& filter) {
  CharacteristicVector c;
  c.filter = filter.label();
  c.freq.assign(static_cast<std::size_t>(model.k), 0.0);
  if (movements.empty()) return c;

  c.player_id = movements.front().player_id;
  std::vector<std::size_t> counts(static_cast<std::size_t>(model.k), 0);
  for (const auto& m : movements) {
    if (!filter.keeps(m)) continue;
    ++counts[static_cast<std::size_t>(assign(m, model))];
    ++c.n_movements;
  }
  if (c.n_movements == 0) return c;
  for (std::size_t j = 0; j < counts.size(); ++j)
    c.freq[j] = static_cast<double>(counts[j]) / static_cast<double>(c.n_movements);
  return c;
}

std::vector<CharacteristicVector> build_profiles(
    const std::vector<MovementVector>& movements, const ClusterModel& model,
    ProfileScope scope, const ProfileFilter& filter) {
  std::map<std::pair<std::string, std::string>, std::vector<MovementVector>> groups;
  for (const auto& m : movements) {
    const std::string key2 = scope == ProfileScope::Game ? m.match_id : std::string();
    groups[{m.player_id, key2}].push_back(m);
  }
  std::vector<CharacteristicVector> profiles;
  profiles.reserve(groups.size());
  for (const auto& [key, group] : groups) {
    CharacteristicVector c = build_characteristic(group, model, filter);
    c.player_id = key.first;
    c.scope = scope;
    c.match_id = key.second;
    profiles.push_back(std::move(c));
  }
  return profiles;
}

std::vector<std::pair<int, double>> top_features(
    const CharacteristicVector& characteristic, int n) {
  std::vector<std::pair<int, double>> entries;
  for (std::size_t j = 0; j < characteristic.freq.size(); ++j)
    if (characteristic.freq[j] > 0.0)
      entries.emplace_back(static_cast<int>(j), characteristic.freq[j]);
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (n < 0) n = 0;
  if (entries.size() > static_cast<std::size_t>(n))
    entries.resize(static_cast<std::size_t>(n));
  return entries;
}

void write_profiles_csv(std::ostream& out,
                        const std::vector<CharacteristicVector>& profiles) {
  const std::size_t k = profiles.empty() ? 0 : profiles.front().freq.size();
  std::string line = "player_id,scope,filter";
  for (std::size_t j = 0; j < k; ++j) {
    line += ",f";
    line += std::to_string(j);
  }
  line += ",n";
  out << line << '\n';

  for (const auto& p : profiles) {
    if (p.freq.size() != k)
      throw std::invalid_argument("profiles with mixed cluster counts");
    line.clear();
    csv::append_field(line, p.player_id);
    csv::append_field(line, p.scope == ProfileScope::Season
                                ? std::string("season")
                                : "game:" + p.match_id);
    csv::append_field(line, p.filter);
    for (std::size_t j = 0; j < k; ++j)
      csv::append_field(line, csv::format_double(p.freq[j]));
    csv::append_field(line, std::to_string(p.n_movements));
    out << line << '\n';
  }
}

std::vector<CharacteristicVector> read_profiles_csv(std::istream& in) {
  if (!in) throw std::runtime_error("cannot read profile matrix");
  std::vector<CharacteristicVector> profiles;
  std::string line;
  std::size_t line_no = 0;
  std::size_t k = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      const auto cols = csv::split_line(line);
      if (cols.size() < 4 || cols[0] != "player_id" || cols[1] != "scope" ||
          cols[2] != "filter" || cols.back() != "n")
        throw std::runtime_error("profile matrix has unexpected header");
      k = cols.size() - 4;
      continue;
    }
    const auto cols = csv::split_line(line);
    if (cols.size() != k + 4)
      throw std::runtime_error("profile matrix line " + std::to_string(line_no) +
                               ": expected " + std::to_string(k + 4) + " columns");
    CharacteristicVector c;
    c.player_id = cols[0];
    if (cols[1] == "season") {
      c.scope = ProfileScope::Season;
    } else if (cols[1].rfind("game:", 0) == 0) {
      c.scope = ProfileScope::Game;
      c.match_id = cols[1].substr(5);
    } else {
      throw std::runtime_error("profile matrix line " + std::to_string(line_no) +
                               ": bad scope '" + cols[1] + "'");
    }
    c.filter = cols[2];
    c.freq.reserve(k);
    for (std::size_t j = 0; j < k; ++j) {
      const auto v = csv::parse_double(cols[3 + j]);
      if (!v)
        throw std::runtime_error("profile matrix line " + std::to_string(line_no) +
                                 ": bad frequency '" + cols[3 + j] + "'");
      c.freq.push_back(*v);
    }
    const auto n = csv::parse_int(cols.back());
    if (!n || *n < 0)
      throw std::runtime_error("profile matrix line " + std::to_string(line_no) +
                               ": bad movement count '" + cols.back() + "'");
    c.n_movements = static_cast<std::size_t>(*n);
    profiles.push_back(std::move(c));
  }
  return profiles;
}

}  // namespace moveprint
