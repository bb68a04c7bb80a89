#include "loci/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "loci/centroids.hpp"
#include "loci/csv.hpp"
#include "loci/dbscan.hpp"
#include "loci/enrich.hpp"
#include "loci/errors.hpp"
#include "loci/features.hpp"
#include "loci/geojson.hpp"
#include "loci/meteostat_client.hpp"
#include "loci/ranking.hpp"
#include "loci/service/config.hpp"
#include "loci/service/http_service.hpp"
#include "loci/service/run.hpp"
#include "loci/track.hpp"

namespace loci::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

/// Invalid flag values detected after CLI11 parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::atomic<bool> g_stop_requested{false};

extern "C" void on_signal(int) { g_stop_requested = true; }

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return in;
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  return out;
}

// Default outputs land in the working directory, never next to the input,
// so a served data directory is not polluted with derived files.
fs::path derived_name(const fs::path& input, const std::string& suffix) {
  return fs::path(input.stem().string() + suffix);
}

std::string file_safe(std::string id) {
  for (char& c : id) {
    if (c == '/' || c == '\\' || c == ':' || c == '*' || c == '?' || c == '"' || c == '<' || c == '>' || c == '|') {
      c = '_';
    }
  }
  return id;
}

std::vector<Track> read_tracks(const fs::path& path, const std::optional<std::string>& individual) {
  auto in = open_input(path);
  auto parsed = parse_tracks(in, SchemaMap::canonical());
  if (parsed.tracks.empty()) throw DataError(path.string() + " holds no track points");
  if (individual) {
    for (auto& t : parsed.tracks) {
      if (t.individual_id == *individual) return {std::move(t)};
    }
    throw DataError("individual '" + *individual + "' not found in " + path.string());
  }
  return std::move(parsed.tracks);
}

json rejection_json(const RejectionReport& r) { return json{{"count", r.count}, {"first_lines", r.first_lines}}; }

// ---------------------------------------------------------------- ingest

struct IngestArgs {
  std::string input;
  std::string schema;
  std::string out_dir = ".";
  bool dedup = false;
};

int do_ingest(const IngestArgs& a, std::ostream& out) {
  const SchemaMap schema = a.schema.empty() ? SchemaMap::movebank() : SchemaMap::parse(a.schema);
  auto in = open_input(a.input);
  const ParseResult parsed = parse_tracks(in, schema, ParseOptions{a.dedup});

  json tracks = json::array();
  for (const Track& t : parsed.tracks) {
    const fs::path file = fs::path(a.out_dir) / (file_safe(t.individual_id) + ".csv");
    auto o = open_output(file);
    write_track_csv(o, t);
    json entry{{"individual_id", t.individual_id}, {"points", t.points.size()}, {"file", file.string()},
               {"sampling_interval_median_s", nullptr}};
    if (t.sampling_interval_median) {
      entry["sampling_interval_median_s"] = static_cast<double>(t.sampling_interval_median->count()) / 1000.0;
    }
    tracks.push_back(std::move(entry));
  }
  const json report{{"tracks", tracks},
                    {"rejections", rejection_json(parsed.rejections)},
                    {"duplicates_dropped", parsed.duplicates_dropped}};
  auto o = open_output(fs::path(a.out_dir) / "rejections.json");
  o << report.dump(2) << '\n';
  out << report.dump(2) << '\n';
  return kSuccess;
}

// ---------------------------------------------------------------- enrich

struct EnrichArgs {
  std::string track;
  std::optional<std::string> individual;
  bool fuzzy = false;
  std::string provider = "fixtures";
  std::string fixtures;
  std::string base_url;
  std::string out;
  std::string report;
  double radius_km = 100.0;
  std::optional<double> grid_minutes;
};

int do_enrich(const EnrichArgs& a, std::ostream& out) {
  if (!(a.radius_km > 0.0)) throw UsageError("--radius-km must be > 0");
  if (a.grid_minutes && !(*a.grid_minutes > 0.0)) throw UsageError("--grid-minutes must be > 0");

  std::shared_ptr<StationProvider> provider;
  if (a.provider == "fixtures") {
    if (a.fixtures.empty()) throw UsageError("--provider fixtures requires --fixtures <dir>");
    provider = std::make_shared<FixtureStationProvider>(a.fixtures);
  } else {
    MeteostatConfig cfg;
    if (!a.base_url.empty()) cfg.base_url = a.base_url;
    provider = std::make_shared<MeteostatClient>(cfg);
  }
  auto cached = std::make_shared<CachingStationProvider>(provider);

  EnrichOptions opts;
  opts.fuzzy = a.fuzzy;
  opts.search.radius_km = a.radius_km;
  if (a.grid_minutes) {
    opts.grid_interval = std::chrono::seconds{static_cast<std::int64_t>(std::llround(*a.grid_minutes * 60.0))};
  }

  std::vector<Track> enriched;
  json reports = json::array();
  for (const Track& t : read_tracks(a.track, a.individual)) {
    EnrichmentResult r = enrich_track(t, *cached, opts);
    json report = to_json(r.report);
    report["individual_id"] = t.individual_id;
    report["station"] = {{"station_id", r.station.station_id},
                         {"name", r.station.name},
                         {"lat", r.station.lat},
                         {"lon", r.station.lon},
                         {"distance_km", r.station.distance_km}};
    reports.push_back(std::move(report));
    enriched.push_back(std::move(r.track));
  }

  const fs::path out_path = a.out.empty() ? derived_name(a.track, ".enriched.csv") : fs::path(a.out);
  const fs::path report_path = a.report.empty() ? derived_name(a.track, ".join.json") : fs::path(a.report);
  {
    auto o = open_output(out_path);
    write_tracks_csv(o, enriched);
  }
  const json doc = reports.size() == 1 ? reports[0] : reports;
  auto o = open_output(report_path);
  o << doc.dump(2) << '\n';
  out << doc.dump(2) << '\n';
  return kSuccess;
}

// ---------------------------------------------------------------- cluster

struct ClusterArgs {
  std::string track;
  std::optional<std::string> individual;
  std::optional<std::string> preset;
  std::optional<std::string> features;
  std::optional<double> eps;
  std::optional<int> min_pts;
  std::string labels_out;
  std::string centroids_out;
  std::string labels_geojson;
  std::string dataset;
  bool raw_temperature = false;
};

struct ClusterPreset {
  const char* name;
  const char* features;
  double eps;
  int min_pts;
};

// Parameter pairs that reproduce the reference Kruger figures.
constexpr ClusterPreset kClusterPresets[] = {
    {"without-temp", "lat,lon", 0.1, 35},
    {"temp-influenced", "lat,lon,temp", 0.2, 50},
};

int do_cluster(ClusterArgs a, std::ostream& out) {
  if (a.preset) {
    const auto* it = std::find_if(std::begin(kClusterPresets), std::end(kClusterPresets),
                                  [&](const ClusterPreset& p) { return *a.preset == p.name; });
    if (it == std::end(kClusterPresets)) {
      throw UsageError("--preset must be without-temp or temp-influenced (got " + *a.preset + ")");
    }
    if (!a.features) a.features = it->features;
    if (!a.eps) a.eps = it->eps;
    if (!a.min_pts) a.min_pts = it->min_pts;
  }
  if (!a.eps) throw UsageError("--eps is required unless --preset is given");
  if (!a.min_pts) throw UsageError("--min-pts is required unless --preset is given");
  if (!std::isfinite(*a.eps) || *a.eps <= 0.0) throw UsageError("--eps must be > 0 (got " + format_double(*a.eps) + ")");
  if (*a.min_pts < 1) throw UsageError("--min-pts must be >= 1 (got " + std::to_string(*a.min_pts) + ")");
  const std::string feature_list = a.features.value_or("lat,lon");
  std::optional<FeatureSpace> space;
  if (feature_list == "lat,lon") space = FeatureSpace::without_temp;
  if (feature_list == "lat,lon,temp" || feature_list == "lat,lon,temperature") space = FeatureSpace::temp_influenced;
  if (!space) throw UsageError("--features must be lat,lon or lat,lon,temp (got " + feature_list + ")");

  auto tracks = read_tracks(a.track, a.individual);
  if (tracks.size() > 1) {
    std::string ids;
    for (const auto& t : tracks) ids += (ids.empty() ? "" : ", ") + t.individual_id;
    throw UsageError(a.track + " holds several individuals (" + ids + "); pick one with --individual");
  }
  const Track& track = tracks.front();

  const FeatureMatrix features = build_features(track, *space);
  ScaleOptions scale;
  if (a.raw_temperature && *space == FeatureSpace::temp_influenced) scale.passthrough_columns = {2};
  ClusterLabeling labeling = dbscan(standard_scale(features.values, scale), *a.eps, *a.min_pts);
  labeling.feature_space = *space;

  std::string dataset = a.dataset;
  if (dataset.empty()) dataset = fs::absolute(a.track).parent_path().filename().string();
  const bool fuzzy = std::any_of(track.points.begin(), track.points.end(),
                                 [](const TrackPoint& p) { return p.temp_source == TempSource::station_fuzzy; });
  const auto centroids =
      extract_centroids(track, labeling, features.point_index, CentroidProvenance{*space, fuzzy, dataset, track.individual_id});

  const fs::path labels_path = a.labels_out.empty() ? derived_name(a.track, ".labels.csv") : fs::path(a.labels_out);
  const fs::path centroids_path =
      a.centroids_out.empty() ? derived_name(a.track, ".centroids.geojson") : fs::path(a.centroids_out);
  {
    auto o = open_output(labels_path);
    write_labeling_csv(o, track, labeling, features.point_index);
  }
  {
    auto o = open_output(centroids_path);
    o << centroids_to_geojson(centroids).dump() << '\n';
  }
  if (!a.labels_geojson.empty()) {
    auto o = open_output(a.labels_geojson);
    o << labeling_to_geojson(track, labeling, features.point_index).dump() << '\n';
  }

  out << json{{"individual_id", track.individual_id},
              {"feature_space", to_string(*space)},
              {"clusters", labeling.clusters},
              {"noise", labeling.noise_count()},
              {"points_used", features.values.rows()},
              {"excluded", features.excluded},
              {"labels", labels_path.string()},
              {"centroids", centroids_path.string()}}
             .dump(2)
      << '\n';
  return kSuccess;
}

// ---------------------------------------------------------------- rank

struct RankArgs {
  std::vector<std::string> centroids;
  std::string settlements;
  std::string strategy = "nearest";
  std::optional<double> radius_km;
  std::uint64_t seed = 0;
  std::string out_csv;
  std::string out_json;
};

int do_rank(const RankArgs& a, std::ostream& out) {
  RankOptions opts;
  const auto strategy = rank_strategy_from_string(a.strategy);
  if (!strategy) throw UsageError("--strategy must be nearest or kmeans (got " + a.strategy + ")");
  opts.strategy = *strategy;
  if (a.radius_km && !(*a.radius_km >= 0.0)) throw UsageError("--radius-km must be >= 0");
  opts.radius_km = a.radius_km;
  opts.seed = a.seed;

  std::vector<Centroid> centroids;
  for (const auto& file : a.centroids) {
    auto in = open_input(file);
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw DataError(file + " is not valid JSON: " + e.what());
    }
    auto loaded = centroids_from_geojson(doc);
    centroids.insert(centroids.end(), loaded.begin(), loaded.end());
  }
  const SettlementLoad settlements = load_settlements(a.settlements);
  if (settlements.settlements.empty()) throw DataError(a.settlements + " contains no point settlements");

  const SettlementRanking ranking = rank_settlements(centroids, settlements.settlements, opts);
  if (!a.out_csv.empty()) {
    auto o = open_output(a.out_csv);
    write_ranking_csv(o, ranking);
  }
  if (!a.out_json.empty()) {
    auto o = open_output(a.out_json);
    o << ranking_to_json(ranking).dump(2) << '\n';
  }
  if (a.out_csv.empty() && a.out_json.empty()) write_ranking_csv(out, ranking);
  return kSuccess;
}

// ---------------------------------------------------------------- serve

struct ServeArgs {
  std::string config;
  std::string data_dir;
  std::optional<int> port;
  std::string host;
};

int do_serve(const ServeArgs& a, std::ostream& out, std::ostream& err) {
  service::ServiceConfig cfg;
  if (!a.config.empty()) cfg = service::load_service_config(a.config);
  if (!a.data_dir.empty()) cfg.data_dir = a.data_dir;
  if (a.port) cfg.port = *a.port;
  if (!a.host.empty()) cfg.host = a.host;
  if (cfg.port < 0 || cfg.port > 65535) throw UsageError("--port must be within 0..65535");
  if (!fs::is_directory(cfg.data_dir)) throw UsageError("--data-dir " + cfg.data_dir.string() + " is not a directory");

  auto catalog = std::make_shared<const service::DataCatalog>(cfg.tracks_dir());
  std::vector<Settlement> settlements;
  if (const auto path = cfg.resolved_settlements(); !path.empty()) settlements = load_settlements(path).settlements;
  auto engine = std::make_shared<service::RunEngine>(
      catalog, service::make_provider(cfg), service::EngineOptions{cfg.point_ceiling, cfg.cache_capacity});
  service::HttpService http(engine, catalog, std::move(settlements), cfg.cors_origin);

  const int port = http.bind(cfg.host, cfg.port);
  if (port < 0) {
    err << "error: cannot bind " << cfg.host << ":" << cfg.port << '\n';
    return kDataError;
  }
  out << "serving " << cfg.data_dir.string() << " on http://" << cfg.host << ":" << port << std::endl;

  g_stop_requested = false;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::thread watcher([&http] {
    while (!g_stop_requested) std::this_thread::sleep_for(std::chrono::milliseconds(200));
    http.stop();
  });
  http.listen();
  g_stop_requested = true;
  watcher.join();
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"loci: locations of interest in animal GPS tracks"};
  app.require_subcommand(1);

  IngestArgs ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Parse a tracking CSV into canonical per-individual tracks");
  ingest_cmd->add_option("--input", ingest.input, "Tracking CSV")->required();
  ingest_cmd->add_option("--schema", ingest.schema,
                         "Column map, e.g. timestamp=time,lat=y,lon=x,id=tag,temperature=temp (Movebank names by default)");
  ingest_cmd->add_option("--out-dir", ingest.out_dir, "Output directory");
  ingest_cmd->add_flag("--dedup", ingest.dedup, "Drop repeated (individual, timestamp) rows");

  EnrichArgs enrich;
  auto* enrich_cmd = app.add_subcommand("enrich", "Attach weather-station temperatures to a track");
  enrich_cmd->add_option("--track", enrich.track, "Canonical track CSV")->required();
  enrich_cmd->add_option("--individual", enrich.individual, "Only this individual");
  enrich_cmd->add_flag("--fuzzy", enrich.fuzzy, "Join within half the median fix interval");
  enrich_cmd->add_option("--provider", enrich.provider, "live or fixtures")
      ->check(CLI::IsMember({"live", "fixtures"}));
  enrich_cmd->add_option("--fixtures", enrich.fixtures, "Fixture directory (stations.csv + <id>.csv)");
  enrich_cmd->add_option("--base-url", enrich.base_url, "Live provider base URL");
  enrich_cmd->add_option("--out", enrich.out, "Enriched track CSV");
  enrich_cmd->add_option("--report", enrich.report, "Join report JSON");
  enrich_cmd->add_option("--radius-km", enrich.radius_km, "Station search radius");
  enrich_cmd->add_option("--grid-minutes", enrich.grid_minutes, "Station series grid step");

  ClusterArgs cluster;
  auto* cluster_cmd = app.add_subcommand("cluster", "Run DBSCAN on a track and export labels and centroids");
  cluster_cmd->add_option("--track", cluster.track, "Canonical track CSV")->required();
  cluster_cmd->add_option("--individual", cluster.individual, "Individual to cluster");
  cluster_cmd->add_option("--features", cluster.features, "lat,lon or lat,lon,temp");
  cluster_cmd->add_option("--preset", cluster.preset, "without-temp (0.1, 35) or temp-influenced (0.2, 50)");
  cluster_cmd->add_option("--eps", cluster.eps, "Neighborhood radius in standardized units");
  cluster_cmd->add_option("--min-pts", cluster.min_pts, "Core-point threshold (self included)");
  cluster_cmd->add_option("--labels-out", cluster.labels_out, "Labeling CSV");
  cluster_cmd->add_option("--centroids-out", cluster.centroids_out, "Centroid GeoJSON");
  cluster_cmd->add_option("--labels-geojson", cluster.labels_geojson, "Also write labeled points as GeoJSON");
  cluster_cmd->add_option("--dataset", cluster.dataset, "Dataset id recorded in centroid provenance");
  cluster_cmd->add_flag("--raw-temperature", cluster.raw_temperature, "Leave the temperature column unscaled");

  RankArgs rank;
  auto* rank_cmd = app.add_subcommand("rank", "Rank settlements by associated centroids");
  rank_cmd->add_option("--centroids", rank.centroids, "Centroid GeoJSON files")->required()->expected(1, -1);
  rank_cmd->add_option("--settlements", rank.settlements, "Settlement GeoJSON or CSV")->required();
  rank_cmd->add_option("--strategy", rank.strategy, "nearest or kmeans");
  rank_cmd->add_option("--radius-km", rank.radius_km, "Leave centroids farther than this unassigned");
  rank_cmd->add_option("--seed", rank.seed, "Seed recorded for the kmeans strategy");
  rank_cmd->add_option("--out-csv", rank.out_csv, "Ranking CSV");
  rank_cmd->add_option("--out-json", rank.out_json, "Ranking JSON");

  ServeArgs serve;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  serve_cmd->add_option("--config", serve.config, "JSON config file");
  serve_cmd->add_option("--data-dir", serve.data_dir, "Data directory (tracks/, stations/, settlements.*)");
  serve_cmd->add_option("--port", serve.port, "Port");
  serve_cmd->add_option("--host", serve.host, "Bind address");

  std::vector<const char*> argv{"loci"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*ingest_cmd) return do_ingest(ingest, out);
    if (*enrich_cmd) return do_enrich(enrich, out);
    if (*cluster_cmd) return do_cluster(cluster, out);
    if (*rank_cmd) return do_rank(rank, out);
    if (*serve_cmd) return do_serve(serve, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ProviderError& e) {
    err << "provider error: " << e.what() << '\n';
    return kProviderError;
  } catch (const std::exception& e) {
    err << "data error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsage;
}

}  // namespace loci::cli
