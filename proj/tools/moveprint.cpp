#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "moveprint/chances.hpp"
#include "moveprint/cluster.hpp"
#include "moveprint/csv.hpp"
#include "moveprint/extract.hpp"
#include "moveprint/ingest.hpp"
#include "moveprint/metrics.hpp"
#include "moveprint/profile.hpp"
#include "moveprint/report.hpp"
#include "moveprint/synthgen.hpp"

namespace {

using namespace moveprint;

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

std::vector<Match> load_matches(const std::string& path) {
  std::ifstream in = open_input(path);
  const LogFormat format =
      path.size() >= 4 && path.substr(path.size() - 4) == ".csv" ? LogFormat::Csv
                                                                 : LogFormat::Jsonl;
  ParseReport report = parse_event_log(in, format);
  if (!report.rejects.empty())
    std::cerr << "note: " << report.rejects.size() << " of " << report.rows_total
              << " rows rejected\n";
  return std::move(report.matches);
}

std::vector<MovementVector> load_movements(const std::string& path) {
  std::ifstream in = open_input(path);
  return read_movements_csv(in);
}

ClusterModel load_model(const std::string& path) {
  std::ifstream in = open_input(path);
  return read_model_json(in);
}

std::vector<CharacteristicVector> load_profiles(const std::string& path) {
  std::ifstream in = open_input(path);
  return read_profiles_csv(in);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out = open_output(path);
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path);
}

int run_ingest(const std::string& input, const std::string& format_name,
               const std::string& out, const std::string& rejects_path) {
  std::ifstream in = open_input(input);
  const LogFormat format = format_name == "csv" ? LogFormat::Csv : LogFormat::Jsonl;
  ParseReport report = parse_event_log(in, format);

  std::ofstream os = open_output(out);
  write_canonical_jsonl(os, report.matches);

  if (!rejects_path.empty()) {
    std::ofstream rejects = open_output(rejects_path);
    rejects << "line_no,reason,raw\n";
    std::string line;
    for (const auto& r : report.rejects) {
      line.clear();
      csv::append_field(line, std::to_string(r.line_no));
      csv::append_field(line, r.reason);
      csv::append_field(line, r.raw);
      rejects << line << '\n';
    }
  }

  std::size_t events = 0;
  for (const auto& m : report.matches) events += m.events.size();
  std::cerr << "ingested " << events << " events across " << report.matches.size()
            << " matches (" << report.rejects.size() << " of " << report.rows_total
            << " rows rejected)\n";
  return 0;
}

int run_extract(const std::string& input, const std::string& venues_path,
                const std::string& out, int max_gap_s) {
  std::vector<Match> matches = load_matches(input);
  VenueRegistry venues;
  if (!venues_path.empty()) {
    std::ifstream vin = open_input(venues_path);
    venues = VenueRegistry::load_csv(vin);
  }

  ExtractOptions opts;
  opts.max_gap_s = max_gap_s;
  std::vector<MovementVector> all;
  std::size_t imputed = 0, orphans = 0;
  for (auto& match : matches) {
    const ImputationStats st = impute_reception_timestamps(match.events);
    imputed += st.imputed;
    orphans += st.orphan_receptions;

    bool found = false;
    const Venue venue = venues.lookup(match.venue_id, found);
    if (!match.venue_id.empty() && !found)
      std::cerr << "warning: unknown venue '" << match.venue_id << "' in match "
                << match.match_id << ", using 105x68\n";

    auto movements = extract_movements(match, venue, opts);
    all.insert(all.end(), movements.begin(), movements.end());
  }

  std::ofstream os = open_output(out);
  write_movements_csv(os, all);
  std::cerr << "extracted " << all.size() << " movements from " << matches.size()
            << " matches (imputed " << imputed << " reception timestamps, "
            << orphans << " orphans)\n";
  return 0;
}

int run_cluster(const std::string& movements_path, int k, std::uint64_t seed,
                int batch, int iters, int workers, const std::string& out) {
  const auto movements = load_movements(movements_path);
  TrainOptions opts;
  opts.batch_size = batch;
  opts.iterations = iters;
  opts.seed = seed;
  opts.workers = workers;
  const ClusterModel model = minibatch_kmeans(movement_points(movements), k, opts);
  std::ofstream os = open_output(out);
  write_model_json(os, model);
  std::cerr << "trained k=" << model.k << " on " << movements.size()
            << " movements, inertia " << model.inertia << "\n";
  return 0;
}

int run_profile(const std::string& movements_path, const std::string& model_path,
                const std::string& scope_name, const std::string& filter_name,
                const std::string& out) {
  const auto movements = load_movements(movements_path);
  const ClusterModel model = load_model(model_path);
  const ProfileScope scope =
      scope_name == "game" ? ProfileScope::Game : ProfileScope::Season;
  const ProfileFilter filter = ProfileFilter::parse(filter_name);
  const auto profiles = build_profiles(movements, model, scope, filter);
  std::ofstream os = open_output(out);
  write_profiles_csv(os, profiles);
  std::cerr << "built " << profiles.size() << " profiles (" << scope_name << ", "
            << filter.label() << ")\n";
  return 0;
}

int run_similar(const std::string& profiles_path, const std::string& player,
                int m, std::size_t min_movements, const std::string& out) {
  const auto profiles = load_profiles(profiles_path);
  MetricsOptions opts;
  opts.m = m;
  opts.min_movements = min_movements;
  const SimilarityList list = most_similar(player, profiles, opts);
  if (out.empty()) {
    write_similarity_csv(std::cout, list);
  } else {
    std::ofstream os = open_output(out);
    write_similarity_csv(os, list);
  }
  return 0;
}

int run_uniqueness(const std::string& profiles_path, int m,
                   std::size_t min_movements, const std::string& out) {
  const auto profiles = load_profiles(profiles_path);
  MetricsOptions opts;
  opts.m = m;
  opts.min_movements = min_movements;
  const auto table = uniqueness_table(profiles, opts);
  std::ofstream os = open_output(out);
  write_uniqueness_csv(os, table);
  std::cerr << "scored " << table.size() << " eligible players\n";
  return 0;
}

int run_consistency(const std::string& profiles_path, const std::string& player,
                    const std::string& out) {
  const auto profiles = load_profiles(profiles_path);
  std::vector<CharacteristicVector> games;
  for (const auto& p : profiles)
    if (p.scope == ProfileScope::Game) games.push_back(p);
  const ConsistencySeries series = consistency_series(player, games);
  std::ofstream os = open_output(out);
  write_consistency_csv(os, series);
  return 0;
}

int run_preshot(const std::string& movements_path, const std::string& events_path,
                const std::string& player, const std::string& team, int window,
                const std::string& out) {
  if (player.empty() == team.empty())
    throw std::runtime_error("pass exactly one of --player or --team");
  const auto matches = load_matches(events_path);
  const auto movements = load_movements(movements_path);
  const auto rows = player.empty()
                        ? preshot_team_rows(matches, movements, team, window)
                        : preshot_player_rows(matches, movements, player);
  std::ofstream os = open_output(out);
  write_preshot_csv(os, rows);
  std::cerr << "found " << rows.size() << " pre-shot movements\n";
  return 0;
}

int run_render_movements(const std::string& movements_path,
                         const std::string& color_by, const std::string& out) {
  const auto movements = load_movements(movements_path);
  const ColorBy mode = color_by == "player" ? ColorBy::Player : ColorBy::Speed;
  write_text_file(out, render_movements(movements, mode));
  return 0;
}

int run_render_profile(const std::string& profiles_path,
                       const std::string& model_path, const std::string& player,
                       const std::string& filter, int top_n,
                       const std::string& out) {
  const auto profiles = load_profiles(profiles_path);
  const ClusterModel model = load_model(model_path);
  const CharacteristicVector* chosen = nullptr;
  for (const auto& p : profiles) {
    if (p.player_id != player || p.scope != ProfileScope::Season) continue;
    if (!filter.empty() && p.filter != filter) continue;
    chosen = &p;
    break;
  }
  if (!chosen)
    throw std::runtime_error("no season profile for player '" + player + "'" +
                             (filter.empty() ? "" : " with filter " + filter));
  write_text_file(out, render_characteristic(*chosen, model, top_n));
  return 0;
}

int run_render_coverage(const std::string& movements_path,
                        const std::string& model_path,
                        const std::vector<int>& clusters, const std::string& out) {
  const auto movements = load_movements(movements_path);
  const ClusterModel model = load_model(model_path);
  write_text_file(out, render_cluster_coverage(model, movements, clusters));
  return 0;
}

int run_render_metrics(const std::string& season_path, const std::string& game_path,
                       const std::string& player, int m, std::size_t min_movements,
                       const std::string& out_dir) {
  const auto season_profiles = load_profiles(season_path);
  const auto game_profiles = load_profiles(game_path);

  MetricsOptions opts;
  opts.m = m;
  opts.min_movements = min_movements;
  const auto table = uniqueness_table(season_profiles, opts);

  std::vector<ConsistencySeries> all_series;
  for (const auto& score : table) {
    try {
      all_series.push_back(consistency_series(score.player_id, game_profiles));
    } catch (const std::runtime_error&) {
      // players without usable game profiles stay off the scatter
    }
  }

  const MetricPlotData data = emit_metric_plots(table, all_series, player);
  std::filesystem::create_directories(out_dir);
  write_text_file(out_dir + "/consistency_series.csv", data.series_csv);
  write_text_file(out_dir + "/uniqueness_scatter.csv", data.scatter_csv);
  return 0;
}

int run_synth(const std::string& spec_path, const std::string& preset,
              bool seed_given, std::uint64_t seed, const std::string& out,
              const std::string& manifest_path, const std::string& planted_path) {
  if (spec_path.empty() == preset.empty())
    throw std::runtime_error("pass exactly one of --spec or --preset");
  SeasonSpec spec;
  if (!preset.empty()) {
    spec = scale_preset(preset);
  } else {
    std::ifstream in = open_input(spec_path);
    spec = read_season_spec_json(in);
  }
  if (seed_given) spec.seed = seed;

  const SeasonTruth truth = generate_season(spec);
  {
    std::ofstream os = open_output(out);
    write_canonical_jsonl(os, truth.matches);
  }
  if (!manifest_path.empty()) {
    std::ofstream os = open_output(manifest_path);
    write_truth_json(os, truth);
  }
  if (!planted_path.empty()) {
    std::ofstream os = open_output(planted_path);
    write_movements_csv(os, truth.planted);
  }
  std::cerr << "generated " << truth.planted.size() << " movements for "
            << truth.players.size() << " players across " << truth.matches.size()
            << " matches\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"movement profiling for event-based soccer data"};
  app.require_subcommand(1);
  int rc = 0;

  // ingest
  std::string in_input, in_format = "jsonl", in_out, in_rejects;
  auto* ingest_cmd = app.add_subcommand("ingest", "parse and canonicalize an event log");
  ingest_cmd->add_option("--input", in_input)->required();
  ingest_cmd->add_option("--format", in_format)->check(CLI::IsMember({"jsonl", "csv"}));
  ingest_cmd->add_option("--out", in_out)->required();
  ingest_cmd->add_option("--rejects", in_rejects);
  ingest_cmd->callback([&] { rc = run_ingest(in_input, in_format, in_out, in_rejects); });

  // extract
  std::string ex_input, ex_venues, ex_out;
  int ex_max_gap = 0;
  auto* extract_cmd = app.add_subcommand("extract", "derive movement vectors");
  extract_cmd->add_option("--input", ex_input)->required();
  extract_cmd->add_option("--venues", ex_venues);
  extract_cmd->add_option("--out", ex_out)->required();
  extract_cmd->add_option("--max-gap-s", ex_max_gap);
  extract_cmd->callback([&] { rc = run_extract(ex_input, ex_venues, ex_out, ex_max_gap); });

  // cluster
  std::string cl_movements, cl_out;
  int cl_k = 200, cl_batch = 1024, cl_iters = 10000, cl_workers = 1;
  std::uint64_t cl_seed = 42;
  auto* cluster_cmd = app.add_subcommand("cluster", "learn the movement vocabulary");
  cluster_cmd->add_option("--movements", cl_movements)->required();
  cluster_cmd->add_option("--k", cl_k);
  cluster_cmd->add_option("--seed", cl_seed);
  cluster_cmd->add_option("--batch", cl_batch);
  cluster_cmd->add_option("--iters", cl_iters);
  cluster_cmd->add_option("--workers", cl_workers);
  cluster_cmd->add_option("--out", cl_out)->required();
  cluster_cmd->callback([&] {
    rc = run_cluster(cl_movements, cl_k, cl_seed, cl_batch, cl_iters, cl_workers, cl_out);
  });

  // profile
  std::string pr_movements, pr_model, pr_scope = "season", pr_filter = "all", pr_out;
  auto* profile_cmd = app.add_subcommand("profile", "build characteristic vectors");
  profile_cmd->add_option("--movements", pr_movements)->required();
  profile_cmd->add_option("--model", pr_model)->required();
  profile_cmd->add_option("--scope", pr_scope)->check(CLI::IsMember({"season", "game"}));
  profile_cmd->add_option("--filter", pr_filter);
  profile_cmd->add_option("--out", pr_out)->required();
  profile_cmd->callback([&] {
    rc = run_profile(pr_movements, pr_model, pr_scope, pr_filter, pr_out);
  });

  // similar
  std::string si_profiles, si_player, si_out;
  int si_m = 5;
  std::size_t si_min = 500;
  auto* similar_cmd = app.add_subcommand("similar", "most similar players");
  similar_cmd->add_option("--profiles", si_profiles)->required();
  similar_cmd->add_option("--player", si_player)->required();
  similar_cmd->add_option("--m", si_m);
  similar_cmd->add_option("--min-movements", si_min);
  similar_cmd->add_option("--out", si_out);
  similar_cmd->callback([&] { rc = run_similar(si_profiles, si_player, si_m, si_min, si_out); });

  // uniqueness
  std::string un_profiles, un_out;
  int un_m = 5;
  std::size_t un_min = 500;
  auto* uniq_cmd = app.add_subcommand("uniqueness", "uniqueness scores");
  uniq_cmd->add_option("--profiles", un_profiles)->required();
  uniq_cmd->add_option("--m", un_m);
  uniq_cmd->add_option("--min-movements", un_min);
  uniq_cmd->add_option("--out", un_out)->required();
  uniq_cmd->callback([&] { rc = run_uniqueness(un_profiles, un_m, un_min, un_out); });

  // consistency
  std::string co_profiles, co_player, co_out;
  auto* cons_cmd = app.add_subcommand("consistency", "per-game consistency series");
  cons_cmd->add_option("--profiles", co_profiles)->required();
  cons_cmd->add_option("--player", co_player)->required();
  cons_cmd->add_option("--out", co_out)->required();
  cons_cmd->callback([&] { rc = run_consistency(co_profiles, co_player, co_out); });

  // preshot
  std::string ps_movements, ps_events, ps_player, ps_team, ps_out;
  int ps_window = 20;
  auto* preshot_cmd = app.add_subcommand("preshot", "movements preceding shots");
  preshot_cmd->add_option("--movements", ps_movements)->required();
  preshot_cmd->add_option("--events", ps_events)->required();
  preshot_cmd->add_option("--player", ps_player);
  preshot_cmd->add_option("--team", ps_team);
  preshot_cmd->add_option("--window", ps_window);
  preshot_cmd->add_option("--out", ps_out)->required();
  preshot_cmd->callback([&] {
    rc = run_preshot(ps_movements, ps_events, ps_player, ps_team, ps_window, ps_out);
  });

  // render
  auto* render_cmd = app.add_subcommand("render", "SVG diagrams and plot data");
  render_cmd->require_subcommand(1);

  std::string rm_movements, rm_color = "speed", rm_out;
  auto* rmov = render_cmd->add_subcommand("movements", "arrows for a movement set");
  rmov->add_option("--movements", rm_movements)->required();
  rmov->add_option("--color-by", rm_color)->check(CLI::IsMember({"speed", "player"}));
  rmov->add_option("--out", rm_out)->required();
  rmov->callback([&] { rc = run_render_movements(rm_movements, rm_color, rm_out); });

  std::string rp_profiles, rp_model, rp_player, rp_filter, rp_out;
  int rp_top = 50;
  auto* rprof = render_cmd->add_subcommand("profile", "a player's top features");
  rprof->add_option("--profiles", rp_profiles)->required();
  rprof->add_option("--model", rp_model)->required();
  rprof->add_option("--player", rp_player)->required();
  rprof->add_option("--filter", rp_filter);
  rprof->add_option("--top", rp_top);
  rprof->add_option("--out", rp_out)->required();
  rprof->callback([&] {
    rc = run_render_profile(rp_profiles, rp_model, rp_player, rp_filter, rp_top, rp_out);
  });

  std::string rc_movements, rc_model, rc_out;
  std::vector<int> rc_clusters;
  auto* rcov = render_cmd->add_subcommand("coverage", "cluster membership");
  rcov->add_option("--movements", rc_movements)->required();
  rcov->add_option("--model", rc_model)->required();
  rcov->add_option("--clusters", rc_clusters)->required()->delimiter(',');
  rcov->add_option("--out", rc_out)->required();
  rcov->callback([&] { rc = run_render_coverage(rc_movements, rc_model, rc_clusters, rc_out); });

  std::string rx_season, rx_game, rx_player, rx_out;
  int rx_m = 5;
  std::size_t rx_min = 500;
  auto* rmet = render_cmd->add_subcommand("metrics", "plot-data CSVs");
  rmet->add_option("--season-profiles", rx_season)->required();
  rmet->add_option("--game-profiles", rx_game)->required();
  rmet->add_option("--player", rx_player);
  rmet->add_option("--m", rx_m);
  rmet->add_option("--min-movements", rx_min);
  rmet->add_option("--out", rx_out)->required();
  rmet->callback([&] {
    rc = run_render_metrics(rx_season, rx_game, rx_player, rx_m, rx_min, rx_out);
  });

  // synth
  std::string sy_spec, sy_preset, sy_out, sy_manifest, sy_planted;
  std::uint64_t sy_seed = 42;
  auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic season");
  synth_cmd->add_option("--spec", sy_spec);
  synth_cmd->add_option("--preset", sy_preset);
  auto* seed_opt = synth_cmd->add_option("--seed", sy_seed);
  synth_cmd->add_option("--out", sy_out)->required();
  synth_cmd->add_option("--manifest", sy_manifest);
  synth_cmd->add_option("--planted", sy_planted);
  synth_cmd->callback([&] {
    rc = run_synth(sy_spec, sy_preset, seed_opt->count() > 0, sy_seed, sy_out,
                   sy_manifest, sy_planted);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
