#include "moveprint/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "moveprint/csv.hpp"

namespace moveprint {

namespace {

constexpr double kSpeedGradientMaxKmh = 25.0;
constexpr double kMinFeatureWidthPx = 0.5;
constexpr double kMaxFeatureWidthPx = 6.0;
constexpr double kArrowHeadPx = 7.0;
constexpr double kArrowHeadAngleRad = 0.35;  // ~20 degrees

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                          "#bcbd22", "#17becf"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string px(double v) { return csv::format_fixed(v, 2); }

void line_px(std::string& svg, double x1, double y1, double x2, double y2) {
  svg += "<line x1=\"" + px(x1) + "\" y1=\"" + px(y1) + "\" x2=\"" + px(x2) +
         "\" y2=\"" + px(y2) + "\"/>";
  svg += '\n';
}

void rect_px(std::string& svg, double x, double y, double w, double h) {
  svg += "<rect x=\"" + px(x) + "\" y=\"" + px(y) + "\" width=\"" + px(w) +
         "\" height=\"" + px(h) + "\" fill=\"none\"/>";
  svg += '\n';
}

void circle_px(std::string& svg, double cx, double cy, double r, bool filled) {
  svg += "<circle cx=\"" + px(cx) + "\" cy=\"" + px(cy) + "\" r=\"" + px(r) +
         "\"";
  if (filled) svg += " fill=\"#555555\"";
  else svg += " fill=\"none\"";
  svg += "/>\n";
}

std::string svg_open(const PitchCanvas& c) {
  std::string svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         px(c.width_px()) + "\" height=\"" + px(c.height_px()) +
         "\" viewBox=\"0 0 " + px(c.width_px()) + " " + px(c.height_px()) +
         "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + px(c.width_px()) + "\" height=\"" +
         px(c.height_px()) + "\" fill=\"#ffffff\"/>\n";

  svg += "<g class=\"pitch\" stroke=\"#555555\" stroke-width=\"1\">\n";
  const double L = kStandardPitchLength, W = kStandardPitchWidth;
  rect_px(svg, c.x_px(0), c.y_px(0), L * c.px_per_m, W * c.px_per_m);
  line_px(svg, c.x_px(L / 2), c.y_px(0), c.x_px(L / 2), c.y_px(W));
  circle_px(svg, c.x_px(L / 2), c.y_px(W / 2), 9.15 * c.px_per_m, false);
  circle_px(svg, c.x_px(L / 2), c.y_px(W / 2), 0.3 * c.px_per_m, true);
  // Penalty boxes and goal areas: 16.5 m / 5.5 m deep around a 7.32 m goal.
  const double box_y = (W - 40.32) / 2.0, goal_y = (W - 18.32) / 2.0;
  rect_px(svg, c.x_px(0), c.y_px(box_y), 16.5 * c.px_per_m, 40.32 * c.px_per_m);
  rect_px(svg, c.x_px(L - 16.5), c.y_px(box_y), 16.5 * c.px_per_m, 40.32 * c.px_per_m);
  rect_px(svg, c.x_px(0), c.y_px(goal_y), 5.5 * c.px_per_m, 18.32 * c.px_per_m);
  rect_px(svg, c.x_px(L - 5.5), c.y_px(goal_y), 5.5 * c.px_per_m, 18.32 * c.px_per_m);
  circle_px(svg, c.x_px(11.0), c.y_px(W / 2), 0.3 * c.px_per_m, true);
  circle_px(svg, c.x_px(L - 11.0), c.y_px(W / 2), 0.3 * c.px_per_m, true);
  svg += "</g>\n";
  return svg;
}

std::string arrow_path(const PitchCanvas& c, double x1_m, double y1_m,
                       double x2_m, double y2_m) {
  const double x1 = c.x_px(x1_m), y1 = c.y_px(y1_m);
  const double x2 = c.x_px(x2_m), y2 = c.y_px(y2_m);
  std::string d = "M " + px(x1) + " " + px(y1) + " L " + px(x2) + " " + px(y2);
  const double dx = x2 - x1, dy = y2 - y1;
  const double len = std::sqrt(dx * dx + dy * dy);
  if (len > 1e-6) {
    const double ux = dx / len, uy = dy / len;
    const double ca = std::cos(kArrowHeadAngleRad), sa = std::sin(kArrowHeadAngleRad);
    const double lx = x2 - kArrowHeadPx * (ux * ca - uy * sa);
    const double ly = y2 - kArrowHeadPx * (ux * sa + uy * ca);
    const double rx = x2 - kArrowHeadPx * (ux * ca + uy * sa);
    const double ry = y2 - kArrowHeadPx * (-ux * sa + uy * ca);
    d += " M " + px(lx) + " " + px(ly) + " L " + px(x2) + " " + px(y2) + " L " +
         px(rx) + " " + px(ry);
  }
  return d;
}

void emit_arrow(std::string& svg, const PitchCanvas& c, double x1_m, double y1_m,
                double x2_m, double y2_m, const std::string& stroke,
                double width_px, double opacity) {
  svg += "<path class=\"arrow\" d=\"" + arrow_path(c, x1_m, y1_m, x2_m, y2_m) +
         "\" fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" +
         px(width_px) + "\"";
  if (opacity < 1.0) svg += " stroke-opacity=\"" + px(opacity) + "\"";
  svg += "/>\n";
}

}  // namespace

std::string speed_color(double speed_kmh) {
  const double t = std::clamp(speed_kmh / kSpeedGradientMaxKmh, 0.0, 1.0);
  const int r = static_cast<int>(std::lround(220.0 * t));
  const int g = static_cast<int>(std::lround(160.0 * (1.0 - t)));
  return "rgb(" + std::to_string(r) + "," + std::to_string(g) + ",0)";
}

std::string player_color(std::size_t player_index) {
  return kPalette[player_index % kPaletteSize];
}

std::string render_movements(const std::vector<MovementVector>& movements,
                             ColorBy color_by, const PitchCanvas& canvas) {
  std::string svg = svg_open(canvas);
  svg += "<g class=\"movements\">\n";
  std::map<std::string, std::size_t> player_order;
  for (const auto& m : movements) {
    std::string color;
    if (color_by == ColorBy::Speed) {
      color = speed_color(m.speed_kmh);
    } else {
      const auto [it, inserted] = player_order.emplace(m.player_id, player_order.size());
      (void)inserted;
      color = player_color(it->second);
    }
    emit_arrow(svg, canvas, m.x1_m, m.y1_m, m.x2_m, m.y2_m, color, 1.5, 1.0);
  }
  svg += "</g>\n</svg>\n";
  return svg;
}

std::string render_characteristic(const CharacteristicVector& characteristic,
                                  const ClusterModel& model, int top_n,
                                  const PitchCanvas& canvas) {
  if (characteristic.empty())
    throw std::invalid_argument("cannot render an empty profile");
  if (characteristic.freq.size() != model.centroids.size())
    throw std::invalid_argument("profile length does not match model");

  const auto top = top_features(characteristic, top_n);
  std::string svg = svg_open(canvas);
  svg += "<g class=\"features\">\n";
  if (!top.empty()) {
    const double fmax = top.front().second;
    const double fmin = top.back().second;
    for (const auto& [idx, f] : top) {
      const double w =
          fmax > fmin
              ? kMinFeatureWidthPx + (kMaxFeatureWidthPx - kMinFeatureWidthPx) *
                                         (f - fmin) / (fmax - fmin)
              : kMaxFeatureWidthPx;
      const Point4& c = model.centroids[static_cast<std::size_t>(idx)];
      emit_arrow(svg, canvas, c[0], c[1], c[2], c[3], "#1f77b4", w, 1.0);
    }
  }
  svg += "</g>\n</svg>\n";
  return svg;
}

std::string render_cluster_coverage(const ClusterModel& model,
                                    const std::vector<MovementVector>& movements,
                                    const std::vector<int>& clusters,
                                    const PitchCanvas& canvas) {
  for (const int c : clusters)
    if (c < 0 || c >= model.k)
      throw std::invalid_argument("unknown cluster index " + std::to_string(c));

  std::vector<int> labels;
  labels.reserve(movements.size());
  for (const auto& m : movements) labels.push_back(assign(m, model));

  std::string svg = svg_open(canvas);
  for (std::size_t group = 0; group < clusters.size(); ++group) {
    const int cluster = clusters[group];
    const std::string color = player_color(group);
    svg += "<g class=\"cluster\">\n";
    for (std::size_t i = 0; i < movements.size(); ++i) {
      if (labels[i] != cluster) continue;
      const auto& m = movements[i];
      emit_arrow(svg, canvas, m.x1_m, m.y1_m, m.x2_m, m.y2_m, color, 1.0, 0.35);
    }
    const Point4& c = model.centroids[static_cast<std::size_t>(cluster)];
    emit_arrow(svg, canvas, c[0], c[1], c[2], c[3], color, 4.0, 1.0);
    svg += "</g>\n";
  }
  svg += "</svg>\n";
  return svg;
}

MetricPlotData emit_metric_plots(const std::vector<UniquenessScore>& uniqueness,
                                 const std::vector<ConsistencySeries>& series,
                                 const std::string& series_player) {
  MetricPlotData data;

  data.series_csv = "game_index,consistency\n";
  const ConsistencySeries* chosen = nullptr;
  for (const auto& s : series) {
    if (series_player.empty() || s.player_id == series_player) {
      chosen = &s;
      break;
    }
  }
  if (chosen) {
    for (std::size_t i = 0; i < chosen->points.size(); ++i)
      data.series_csv += std::to_string(i + 1) + "," +
                         csv::format_fixed(chosen->points[i].value, 6) + "\n";
  }

  data.scatter_csv = "player_id,uniqueness,mean_consistency\n";
  std::map<std::string, const ConsistencySeries*> by_player;
  for (const auto& s : series) by_player.emplace(s.player_id, &s);
  std::string line;
  for (const auto& u : uniqueness) {
    const auto it = by_player.find(u.player_id);
    if (it == by_player.end() || it->second->points.empty()) continue;
    double sum = 0.0;
    for (const auto& p : it->second->points) sum += p.value;
    const double mean = sum / static_cast<double>(it->second->points.size());
    line.clear();
    csv::append_field(line, u.player_id);
    csv::append_field(line, csv::format_fixed(u.u, 6));
    csv::append_field(line, csv::format_fixed(mean, 6));
    data.scatter_csv += line + "\n";
  }
  return data;
}

}  // namespace moveprint
