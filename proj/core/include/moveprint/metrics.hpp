#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "moveprint/profile.hpp"

namespace moveprint {

// 1 - cos(a, b) over the frequency vectors; lies in [0,1] because the
// components are non-negative. Identical vectors give exactly 0.
double cosine_distance(const CharacteristicVector& a,
                       const CharacteristicVector& b);

struct MetricsOptions {
  int m = 5;                        // neighbours summed / listed
  std::size_t min_movements = 500;  // eligibility floor; 0 disables
  int workers = 1;
};

struct SimilarityEntry {
  std::string player_id;
  double distance = 0.0;
};

struct SimilarityList {
  std::string player_id;
  std::vector<SimilarityEntry> entries;  // ascending distance, ties by id
};

struct UniquenessScore {
  std::string player_id;
  double u = 0.0;
  int m = 5;
  std::size_t n_movements = 0;
};

struct ConsistencyPoint {
  std::string match_id;
  double value = 0.0;
};

struct ConsistencySeries {
  std::string player_id;
  std::vector<ConsistencyPoint> points;  // game order = match_id order
};

// The m nearest eligible profiles to the query player. Eligibility requires
// a non-empty profile with at least min_movements movements; the query must
// be eligible too.
SimilarityList most_similar(const std::string& query,
                            const std::vector<CharacteristicVector>& profiles,
                            const MetricsOptions& opts = {});

// Sum of the m smallest distances from the player to eligible others.
UniquenessScore uniqueness(const std::string& player,
                           const std::vector<CharacteristicVector>& profiles,
                           const MetricsOptions& opts = {});

// Uniqueness for every eligible player, sorted by score descending then id.
std::vector<UniquenessScore> uniqueness_table(
    const std::vector<CharacteristicVector>& profiles,
    const MetricsOptions& opts = {});

// Per-game consistency: mean distance from game k's profile to all of the
// player's non-empty game profiles, the self term included.
ConsistencySeries consistency_series(
    const std::string& player,
    const std::vector<CharacteristicVector>& game_profiles);

double consistency(const std::string& player, const std::string& match_id,
                   const std::vector<CharacteristicVector>& game_profiles);

// Table outputs; distances printed with 3 decimals.
void write_similarity_csv(std::ostream& out, const SimilarityList& list);
void write_uniqueness_csv(std::ostream& out,
                          const std::vector<UniquenessScore>& table);
void write_consistency_csv(std::ostream& out, const ConsistencySeries& series);

}  // namespace moveprint
