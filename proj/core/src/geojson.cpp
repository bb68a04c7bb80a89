#include "loci/geojson.hpp"

#include <ostream>

#include "loci/csv.hpp"
#include "loci/errors.hpp"

namespace loci {

using nlohmann::json;

json point_geometry(double lat, double lon) {
  return json{{"type", "Point"}, {"coordinates", json::array({lon, lat})}};
}

namespace {

json feature_collection(json features) {
  return json{{"type", "FeatureCollection"}, {"features", std::move(features)}};
}

const TrackPoint& point_for(const Track& track, std::span<const std::size_t> point_index, std::size_t r) {
  const std::size_t idx = point_index.empty() ? r : point_index[r];
  if (idx >= track.points.size()) throw ParameterError("point index out of range");
  return track.points[idx];
}

}  // namespace

json labeling_to_geojson(const Track& track, const ClusterLabeling& labeling, std::span<const std::size_t> point_index) {
  json features = json::array();
  for (std::size_t r = 0; r < labeling.labels.size(); ++r) {
    const TrackPoint& p = point_for(track, point_index, r);
    json props{{"point_index", point_index.empty() ? r : point_index[r]}, {"label", labeling.labels[r]}};
    if (p.temperature) props["temperature"] = *p.temperature;
    features.push_back(json{{"type", "Feature"}, {"geometry", point_geometry(p.lat, p.lon)}, {"properties", props}});
  }
  return feature_collection(std::move(features));
}

void write_labeling_csv(std::ostream& out, const Track& track, const ClusterLabeling& labeling,
                        std::span<const std::size_t> point_index) {
  out << "point_index,lat,lon,temperature,label\n";
  for (std::size_t r = 0; r < labeling.labels.size(); ++r) {
    const TrackPoint& p = point_for(track, point_index, r);
    out << (point_index.empty() ? r : point_index[r]) << ',' << format_double(p.lat) << ',' << format_double(p.lon)
        << ',';
    if (p.temperature) out << format_double(*p.temperature);
    out << ',' << labeling.labels[r] << '\n';
  }
}

json centroids_to_geojson(std::span<const Centroid> centroids) {
  json features = json::array();
  for (const Centroid& c : centroids) {
    features.push_back(json{{"type", "Feature"},
                            {"geometry", point_geometry(c.lat, c.lon)},
                            {"properties",
                             {{"cluster_id", c.cluster_id},
                              {"member_count", c.member_count},
                              {"feature_space", to_string(c.provenance.feature_space)},
                              {"fuzzy", c.provenance.fuzzy_enrichment},
                              {"dataset_id", c.provenance.dataset_id},
                              {"individual_id", c.provenance.individual_id}}}});
  }
  return feature_collection(std::move(features));
}

std::vector<Centroid> centroids_from_geojson(const json& collection) {
  if (!collection.is_object() || collection.value("type", "") != "FeatureCollection" ||
      !collection.contains("features") || !collection["features"].is_array()) {
    throw DataError("centroid file is not a GeoJSON FeatureCollection");
  }
  std::vector<Centroid> out;
  for (const json& f : collection["features"]) {
    const json* geom = f.contains("geometry") ? &f["geometry"] : nullptr;
    if (geom == nullptr || !geom->is_object() || geom->value("type", "") != "Point") continue;
    const json& coords = (*geom)["coordinates"];
    if (!coords.is_array() || coords.size() < 2 || !coords[0].is_number() || !coords[1].is_number()) continue;
    Centroid c;
    c.lon = coords[0].get<double>();
    c.lat = coords[1].get<double>();
    if (!valid_coordinate({c.lat, c.lon})) continue;
    const json props = f.value("properties", json::object());
    if (props.is_object()) {
      c.cluster_id = props.value("cluster_id", 0);
      c.member_count = props.value("member_count", std::size_t{1});
      c.provenance.feature_space =
          feature_space_from_string(props.value("feature_space", std::string("without_temp")))
              .value_or(FeatureSpace::without_temp);
      c.provenance.fuzzy_enrichment = props.value("fuzzy", false);
      c.provenance.dataset_id = props.value("dataset_id", std::string());
      c.provenance.individual_id = props.value("individual_id", std::string());
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<std::size_t> decimation_indices(std::size_t count, std::size_t stride) {
  std::vector<std::size_t> out;
  if (count == 0) return out;
  if (stride == 0) stride = 1;
  for (std::size_t i = 0; i < count; i += stride) out.push_back(i);
  if (out.back() != count - 1) out.push_back(count - 1);
  return out;
}

json track_to_geojson(const Track& track, std::size_t stride) {
  json features = json::array();
  for (std::size_t i : decimation_indices(track.points.size(), stride)) {
    const TrackPoint& p = track.points[i];
    json props{{"timestamp", format_timestamp(p.timestamp)}, {"point_index", i}};
    if (p.temperature) props["temperature"] = *p.temperature;
    features.push_back(json{{"type", "Feature"}, {"geometry", point_geometry(p.lat, p.lon)}, {"properties", props}});
  }
  json fc = feature_collection(std::move(features));
  fc["properties"] = {{"individual_id", track.individual_id}, {"stride", stride == 0 ? 1 : stride},
                      {"total_points", track.points.size()}};
  return fc;
}

}  // namespace loci
