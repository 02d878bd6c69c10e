#pragma once

#include <string>
#include <vector>

#include "moveprint/cluster.hpp"
#include "moveprint/metrics.hpp"
#include "moveprint/profile.hpp"
#include "moveprint/types.hpp"

namespace moveprint {

// Affine, aspect-preserving meters-to-pixels mapping over a 105x68 pitch.
struct PitchCanvas {
  double px_per_m = 8.0;
  double margin_px = 20.0;

  double width_px() const { return kStandardPitchLength * px_per_m + 2.0 * margin_px; }
  double height_px() const { return kStandardPitchWidth * px_per_m + 2.0 * margin_px; }
  double x_px(double x_m) const { return margin_px + x_m * px_per_m; }
  double y_px(double y_m) const { return margin_px + y_m * px_per_m; }
};

enum class ColorBy { Speed, Player };

// Green at 0 km/h shading to red, clamped at 25 km/h.
std::string speed_color(double speed_kmh);
// Categorical palette, cycled.
std::string player_color(std::size_t player_index);

// One arrow per movement. Speed mode colors by the gradient above; player
// mode assigns palette colors in order of first appearance.
std::string render_movements(const std::vector<MovementVector>& movements,
                             ColorBy color_by, const PitchCanvas& canvas = {});

// Top-N features of a profile as centroid arrows, stroke width affine in
// frequency: 0.5 px at the N-th frequency, 6 px at the top.
std::string render_characteristic(const CharacteristicVector& characteristic,
                                  const ClusterModel& model, int top_n = 50,
                                  const PitchCanvas& canvas = {});

// Member movements of each requested cluster in one color per cluster, with
// the centroid arrow emphasized.
std::string render_cluster_coverage(const ClusterModel& model,
                                    const std::vector<MovementVector>& movements,
                                    const std::vector<int>& clusters,
                                    const PitchCanvas& canvas = {});

struct MetricPlotData {
  std::string series_csv;   // game_index,consistency
  std::string scatter_csv;  // player_id,uniqueness,mean_consistency
};

// Plot-data CSVs: one player's consistency series (the given player, or the
// first series when unspecified) and the uniqueness/mean-consistency scatter.
MetricPlotData emit_metric_plots(const std::vector<UniquenessScore>& uniqueness,
                                 const std::vector<ConsistencySeries>& series,
                                 const std::string& series_player = "");

}  // namespace moveprint
