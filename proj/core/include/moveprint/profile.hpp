#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "moveprint/cluster.hpp"
#include "moveprint/types.hpp"

namespace moveprint {

enum class ProfileScope { Season, Game };

enum class FilterKind { All, WithBall, HighSpeed };

struct ProfileFilter {
  FilterKind kind = FilterKind::All;
  double speed_threshold_kmh = 14.0;

  bool keeps(const MovementVector& m) const;
  std::string label() const;  // "all", "ball", "speed:<threshold>"

  // Accepts the CLI tokens: all | ball | speed[:threshold]
  static ProfileFilter parse(const std::string& token);
};

// Normalized cluster-frequency vector of one player over one scope.
// n_movements == 0 marks an empty profile; its freq is all zero and it is
// excluded from distance-based metrics.
struct CharacteristicVector {
  std::string player_id;
  ProfileScope scope = ProfileScope::Season;
  std::string match_id;  // set only for game scope
  std::string filter = "all";
  std::vector<double> freq;
  std::size_t n_movements = 0;

  bool empty() const { return n_movements == 0; }
};

// Aggregates one player-scope group of movements. All movements must belong
// to the same player (and match, for game scope).
CharacteristicVector build_characteristic(
    const std::vector<MovementVector>& movements, const ClusterModel& model,
    const ProfileFilter& filter = {});

// Groups movements by player (season scope) or by (player, match) and builds
// one characteristic per group, ordered by (player_id, match_id).
std::vector<CharacteristicVector> build_profiles(
    const std::vector<MovementVector>& movements, const ClusterModel& model,
    ProfileScope scope, const ProfileFilter& filter = {});

// Clusters with nonzero frequency, sorted by frequency descending then index
// ascending, truncated to at most n entries.
std::vector<std::pair<int, double>> top_features(
    const CharacteristicVector& characteristic, int n = 50);

// CSV schema: player_id,scope,filter,f0..f{K-1},n
// scope is "season" or "game:<match_id>". Frequencies use shortest
// round-trip formatting so a read-back is value-exact.
void write_profiles_csv(std::ostream& out,
                        const std::vector<CharacteristicVector>& profiles);
std::vector<CharacteristicVector> read_profiles_csv(std::istream& in);

}  // namespace moveprint
