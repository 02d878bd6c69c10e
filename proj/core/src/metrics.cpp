#include "moveprint/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "moveprint/csv.hpp"
#include "moveprint/parallel.hpp"

namespace moveprint {

namespace {

bool eligible(const CharacteristicVector& p, const MetricsOptions& opts) {
  return !p.empty() && p.n_movements >= opts.min_movements;
}

const CharacteristicVector* find_profile(
    const std::string& player, const std::vector<CharacteristicVector>& profiles) {
  for (const auto& p : profiles)
    if (p.player_id == player) return &p;
  return nullptr;
}

std::vector<SimilarityEntry> nearest_entries(
    const CharacteristicVector& query,
    const std::vector<const CharacteristicVector*>& pool, int m) {
  std::vector<SimilarityEntry> entries;
  entries.reserve(pool.size());
  for (const auto* p : pool) {
    if (p->player_id == query.player_id) continue;
    entries.push_back({p->player_id, cosine_distance(query, *p)});
  }
  if (entries.size() < static_cast<std::size_t>(m))
    throw std::runtime_error("fewer than " + std::to_string(m) +
                             " eligible profiles besides '" + query.player_id + "'");
  std::sort(entries.begin(), entries.end(),
            [](const SimilarityEntry& a, const SimilarityEntry& b) {
              if (a.distance != b.distance) return a.distance < b.distance;
              return a.player_id < b.player_id;
            });
  entries.resize(static_cast<std::size_t>(m));
  return entries;
}

}  // namespace

double cosine_distance(const CharacteristicVector& a,
                       const CharacteristicVector& b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("undefined distance for empty profile");
  if (a.freq.size() != b.freq.size())
    throw std::invalid_argument("profile length mismatch");
  if (a.freq == b.freq) return 0.0;

  double dot = 0.0, na2 = 0.0, nb2 = 0.0;
  for (std::size_t j = 0; j < a.freq.size(); ++j) {
    dot += a.freq[j] * b.freq[j];
    na2 += a.freq[j] * a.freq[j];
    nb2 += b.freq[j] * b.freq[j];
  }
  const double d = 1.0 - dot / (std::sqrt(na2) * std::sqrt(nb2));
  return std::clamp(d, 0.0, 1.0);
}

SimilarityList most_similar(const std::string& query,
                            const std::vector<CharacteristicVector>& profiles,
                            const MetricsOptions& opts) {
  if (opts.m < 1) throw std::invalid_argument("m must be >= 1");
  const CharacteristicVector* q = find_profile(query, profiles);
  if (!q) throw std::runtime_error("no profile for player '" + query + "'");
  if (q->empty()) throw std::runtime_error("player '" + query + "' has an empty profile");
  if (!eligible(*q, opts))
    throw std::runtime_error("player '" + query + "' is below the movement floor");

  std::vector<const CharacteristicVector*> pool;
  for (const auto& p : profiles)
    if (eligible(p, opts)) pool.push_back(&p);

  SimilarityList list;
  list.player_id = query;
  list.entries = nearest_entries(*q, pool, opts.m);
  return list;
}

UniquenessScore uniqueness(const std::string& player,
                           const std::vector<CharacteristicVector>& profiles,
                           const MetricsOptions& opts) {
  const SimilarityList list = most_similar(player, profiles, opts);
  UniquenessScore score;
  score.player_id = player;
  score.m = opts.m;
  score.n_movements = find_profile(player, profiles)->n_movements;
  for (const auto& e : list.entries) score.u += e.distance;
  return score;
}

std::vector<UniquenessScore> uniqueness_table(
    const std::vector<CharacteristicVector>& profiles,
    const MetricsOptions& opts) {
  if (opts.m < 1) throw std::invalid_argument("m must be >= 1");
  std::vector<const CharacteristicVector*> pool;
  for (const auto& p : profiles)
    if (eligible(p, opts)) pool.push_back(&p);
  if (pool.size() < static_cast<std::size_t>(opts.m) + 1)
    throw std::runtime_error("need at least " + std::to_string(opts.m + 1) +
                             " eligible profiles, have " +
                             std::to_string(pool.size()));

  std::vector<UniquenessScore> table(pool.size());
  parallel_for_chunks(
      pool.size(), 16,
      [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
          const auto entries = nearest_entries(*pool[i], pool, opts.m);
          UniquenessScore& s = table[i];
          s.player_id = pool[i]->player_id;
          s.m = opts.m;
          s.n_movements = pool[i]->n_movements;
          for (const auto& e : entries) s.u += e.distance;
        }
      },
      opts.workers);

  std::sort(table.begin(), table.end(),
            [](const UniquenessScore& a, const UniquenessScore& b) {
              if (a.u != b.u) return a.u > b.u;
              return a.player_id < b.player_id;
            });
  return table;
}

ConsistencySeries consistency_series(
    const std::string& player,
    const std::vector<CharacteristicVector>& game_profiles) {
  std::vector<const CharacteristicVector*> games;
  for (const auto& p : game_profiles)
    if (p.player_id == player && !p.empty()) games.push_back(&p);
  if (games.empty())
    throw std::runtime_error("player '" + player +
                             "' has no non-empty game profiles");
  std::sort(games.begin(), games.end(),
            [](const CharacteristicVector* a, const CharacteristicVector* b) {
              return a->match_id < b->match_id;
            });

  const double n = static_cast<double>(games.size());
  ConsistencySeries series;
  series.player_id = player;
  series.points.reserve(games.size());
  for (const auto* k : games) {
    double sum = 0.0;
    for (const auto* t : games) sum += cosine_distance(*k, *t);
    series.points.push_back({k->match_id, sum / n});
  }
  return series;
}

double consistency(const std::string& player, const std::string& match_id,
                   const std::vector<CharacteristicVector>& game_profiles) {
  const ConsistencySeries series = consistency_series(player, game_profiles);
  for (const auto& p : series.points)
    if (p.match_id == match_id) return p.value;
  throw std::runtime_error("player '" + player +
                           "' has no non-empty profile for match '" + match_id +
                           "'");
}

void write_similarity_csv(std::ostream& out, const SimilarityList& list) {
  out << "rank,player_id,distance\n";
  std::string line;
  for (std::size_t i = 0; i < list.entries.size(); ++i) {
    line.clear();
    csv::append_field(line, std::to_string(i + 1));
    csv::append_field(line, list.entries[i].player_id);
    csv::append_field(line, csv::format_fixed(list.entries[i].distance, 3));
    out << line << '\n';
  }
}

void write_uniqueness_csv(std::ostream& out,
                          const std::vector<UniquenessScore>& table) {
  out << "player_id,uniqueness,n_movements\n";
  std::string line;
  for (const auto& s : table) {
    line.clear();
    csv::append_field(line, s.player_id);
    csv::append_field(line, csv::format_fixed(s.u, 3));
    csv::append_field(line, std::to_string(s.n_movements));
    out << line << '\n';
  }
}

void write_consistency_csv(std::ostream& out, const ConsistencySeries& series) {
  out << "game_index,match_id,consistency\n";
  std::string line;
  for (std::size_t i = 0; i < series.points.size(); ++i) {
    line.clear();
    csv::append_field(line, std::to_string(i + 1));
    csv::append_field(line, series.points[i].match_id);
    csv::append_field(line, csv::format_fixed(series.points[i].value, 6));
    out << line << '\n';
  }
}

}  // namespace moveprint
