#include "loci/service/run.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "loci/dbscan.hpp"
#include "loci/enrich.hpp"
#include "loci/geojson.hpp"

namespace loci::service {

using nlohmann::json;

namespace {

RequestError bad_request(const std::string& message) { return RequestError(400, "invalid_request", message); }

template <typename T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw bad_request(std::string("missing field '") + key + "'");
  try {
    return j[key].get<T>();
  } catch (const json::exception&) {
    throw bad_request(std::string("field '") + key + "' has the wrong type");
  }
}

void validate(const RunRequest& r) {
  if (r.dataset_id.empty() || r.individual_id.empty()) throw bad_request("dataset_id and individual_id are required");
  if (!std::isfinite(r.epsilon) || r.epsilon <= 0.0) throw bad_request("epsilon must be > 0");
  if (r.min_pts < 1) throw bad_request("min_pts must be >= 1");
  if (r.decimate && *r.decimate < 1) throw bad_request("decimate must be >= 1");
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

RunRequest run_request_from_json(const json& j) {
  if (!j.is_object()) throw bad_request("run request must be a JSON object");
  RunRequest r;
  r.dataset_id = field<std::string>(j, "dataset_id");
  r.individual_id = field<std::string>(j, "individual_id");
  const auto space = feature_space_from_string(field<std::string>(j, "feature_space"));
  if (!space) throw bad_request("feature_space must be 'without_temp' or 'temp_influenced'");
  r.feature_space = *space;
  if (!j.contains("epsilon") || !j["epsilon"].is_number()) throw bad_request("epsilon must be a number");
  r.epsilon = j["epsilon"].get<double>();
  if (!j.contains("min_pts") || !j["min_pts"].is_number_integer()) throw bad_request("min_pts must be an integer");
  const auto min_pts = j["min_pts"].get<std::int64_t>();
  if (min_pts < 1 || min_pts > 1'000'000'000) throw bad_request("min_pts must be >= 1");
  r.min_pts = static_cast<int>(min_pts);
  if (j.contains("fuzzy")) {
    if (!j["fuzzy"].is_boolean()) throw bad_request("fuzzy must be a boolean");
    r.fuzzy = j["fuzzy"].get<bool>();
  }
  if (j.contains("enrichment")) {
    const auto e = field<std::string>(j, "enrichment");
    if (e == "native") {
      r.enrichment = Enrichment::native;
    } else if (e == "station") {
      r.enrichment = Enrichment::station;
    } else {
      throw bad_request("enrichment must be 'native' or 'station'");
    }
  }
  if (j.contains("decimate") && !j["decimate"].is_null()) {
    if (!j["decimate"].is_number_integer() || j["decimate"].get<std::int64_t>() < 1) {
      throw bad_request("decimate must be an integer >= 1");
    }
    r.decimate = j["decimate"].get<std::size_t>();
  }
  validate(r);
  return r;
}

json to_json(const RunRequest& r) {
  return json{{"dataset_id", r.dataset_id},
              {"individual_id", r.individual_id},
              {"feature_space", to_string(r.feature_space)},
              {"epsilon", r.epsilon},
              {"min_pts", r.min_pts},
              {"fuzzy", r.fuzzy},
              {"enrichment", r.enrichment == Enrichment::native ? "native" : "station"},
              {"decimate", r.decimate ? json(*r.decimate) : json(nullptr)}};
}

std::string run_id_for(const RunRequest& request) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(to_json(request).dump())));
  return buf;
}

json to_json(const RunResult& r) {
  return json{{"run_id", r.run_id},
              {"request", to_json(r.request)},
              {"summary",
               {{"clusters", r.summary.clusters},
                {"noise", r.summary.noise},
                {"points_used", r.summary.points_used},
                {"excluded", r.summary.excluded},
                {"track_points", r.summary.track_points}}},
              {"centroids", centroids_to_geojson(r.centroids)},
              {"join_report", r.join ? to_json(*r.join) : json(nullptr)}};
}

DataCatalog::DataCatalog(const std::filesystem::path& root) {
  if (!std::filesystem::is_directory(root)) return;
  for (const auto& dataset : std::filesystem::directory_iterator(root)) {
    if (!dataset.is_directory()) continue;
    const std::string dataset_id = dataset.path().filename().string();
    for (const auto& file : std::filesystem::directory_iterator(dataset.path())) {
      if (!file.is_regular_file() || file.path().extension() != ".csv") continue;
      std::ifstream in(file.path());
      auto parsed = parse_tracks(in, SchemaMap::canonical());
      for (auto& t : parsed.tracks) {
        auto& slot = datasets_[dataset_id][t.individual_id];
        if (slot) throw DataError("individual " + t.individual_id + " appears twice in dataset " + dataset_id);
        slot = std::make_shared<const Track>(std::move(t));
      }
    }
  }
}

std::shared_ptr<const Track> DataCatalog::track(const std::string& dataset_id, const std::string& individual_id) const {
  const auto ds = datasets_.find(dataset_id);
  if (ds == datasets_.end()) throw RequestError(404, "not_found", "unknown dataset '" + dataset_id + "'");
  const auto it = ds->second.find(individual_id);
  if (it == ds->second.end()) {
    throw RequestError(404, "not_found", "unknown individual '" + individual_id + "' in dataset '" + dataset_id + "'");
  }
  return it->second;
}

json DataCatalog::listing() const {
  json out = json::array();
  for (const auto& [dataset_id, individuals] : datasets_) {
    json list = json::array();
    for (const auto& [id, track] : individuals) {
      list.push_back({{"individual_id", id},
                      {"points", track->points.size()},
                      {"has_temperature", track->has_any_temperature()}});
    }
    out.push_back({{"dataset_id", dataset_id}, {"individuals", std::move(list)}});
  }
  return out;
}

RunEngine::RunEngine(std::shared_ptr<const DataCatalog> catalog, std::shared_ptr<StationProvider> provider,
                     EngineOptions options)
    : catalog_(std::move(catalog)), provider_(std::move(provider)), options_(options), cache_(options.cache_capacity) {}

RunEngine::Outcome RunEngine::run(const RunRequest& request) {
  validate(request);
  const std::string id = run_id_for(request);
  if (auto hit = cache_.get(id)) return {*hit, true};
  auto result = execute(request, id);
  cache_.put(id, result);
  return {result, false};
}

std::shared_ptr<const RunResult> RunEngine::find(const std::string& run_id) {
  return cache_.get(run_id).value_or(nullptr);
}

std::shared_ptr<const RunResult> RunEngine::execute(const RunRequest& request, const std::string& run_id) const {
  const auto started = std::chrono::steady_clock::now();
  const auto source = catalog_->track(request.dataset_id, request.individual_id);

  const std::size_t stride = request.decimate.value_or(1);
  const auto kept = decimation_indices(source->points.size(), stride);
  if (kept.size() > options_.point_ceiling) {
    throw RequestError(400, "too_many_points",
                       std::to_string(kept.size()) + " points exceed the ceiling of " +
                           std::to_string(options_.point_ceiling) + "; set decimate");
  }
  if (request.feature_space == FeatureSpace::temp_influenced && request.enrichment == Enrichment::native &&
      !source->has_any_temperature()) {
    throw RequestError(400, "invalid_request",
                       "track has no native temperature; temp_influenced requires enrichment 'station'");
  }

  auto result = std::make_shared<RunResult>();
  result->run_id = run_id;
  result->request = request;

  Track working = *source;
  if (request.enrichment == Enrichment::station) {
    if (!provider_) throw RequestError(503, "provider_unavailable", "no station provider configured");
    EnrichOptions opts;
    opts.fuzzy = request.fuzzy;
    try {
      auto enriched = enrich_track(working, *provider_, opts);
      working = std::move(enriched.track);
      result->join = std::move(enriched.report);
    } catch (const DomainError& e) {
      throw RequestError(400, "data_error", e.what());
    }
  }
  if (stride > 1) {
    std::vector<TrackPoint> pts;
    pts.reserve(kept.size());
    for (std::size_t i : kept) pts.push_back(working.points[i]);
    working.points = std::move(pts);
    working.sampling_interval_median = median_interval(working.points);
  }

  try {
    FeatureMatrix features = build_features(working, request.feature_space);
    ClusterLabeling labeling = dbscan(standard_scale(features.values), request.epsilon, request.min_pts);
    labeling.feature_space = request.feature_space;
    CentroidProvenance prov{request.feature_space,
                            request.enrichment == Enrichment::station && request.fuzzy,
                            request.dataset_id, request.individual_id};
    result->centroids = extract_centroids(working, labeling, features.point_index, prov);
    result->summary = RunSummary{labeling.clusters, labeling.noise_count(), features.values.rows(), features.excluded,
                                 working.points.size()};
    result->labeling = std::move(labeling);
    result->point_index = std::move(features.point_index);
  } catch (const EmptyFeatureError& e) {
    throw RequestError(400, "empty_features", e.what());
  }
  result->track = std::move(working);
  result->elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return result;
}

}  // namespace loci::service
