#include "loci/settlement.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "loci/csv.hpp"
#include "loci/errors.hpp"
#include "loci/geo.hpp"
#include "loci/geojson.hpp"

namespace loci {

std::string normalize_settlement_kind(std::string_view raw) {
  std::string k(raw);
  std::transform(k.begin(), k.end(), k.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (k == "village" || k == "hamlet" || k == "town" || k == "camp") return k;
  if (k == "camp_site" || k == "campsite") return "camp";
  return "other";
}

SettlementLoad load_settlements_geojson(const nlohmann::json& collection) {
  if (!collection.is_object() || collection.value("type", "") != "FeatureCollection" ||
      !collection.contains("features") || !collection["features"].is_array()) {
    throw DataError("settlement file is not a GeoJSON FeatureCollection");
  }
  SettlementLoad out;
  for (const auto& f : collection["features"]) {
    const auto* geom = f.is_object() && f.contains("geometry") ? &f["geometry"] : nullptr;
    if (geom == nullptr || !geom->is_object() || geom->value("type", "") != "Point") {
      ++out.skipped;
      continue;
    }
    const auto& c = (*geom)["coordinates"];
    if (!c.is_array() || c.size() < 2 || !c[0].is_number() || !c[1].is_number()) {
      ++out.skipped;
      continue;
    }
    Settlement s;
    s.lon = c[0].get<double>();
    s.lat = c[1].get<double>();
    if (!valid_coordinate({s.lat, s.lon})) {
      ++out.skipped;
      continue;
    }
    const auto props = f.value("properties", nlohmann::json::object());
    if (props.is_object()) {
      if (props.contains("name") && props["name"].is_string()) s.name = props["name"].get<std::string>();
      for (const char* key : {"place", "type", "kind"}) {
        if (props.contains(key) && props[key].is_string()) {
          s.kind = normalize_settlement_kind(props[key].get<std::string>());
          break;
        }
      }
    }
    out.settlements.push_back(std::move(s));
  }
  return out;
}

SettlementLoad load_settlements_csv(std::istream& in) {
  CsvReader reader(in);
  std::vector<std::string> header;
  SettlementLoad out;
  if (!reader.next(header)) return out;
  auto find = [&](std::initializer_list<std::string_view> names) -> std::optional<std::size_t> {
    for (auto name : names) {
      if (auto it = std::find(header.begin(), header.end(), name); it != header.end()) {
        return static_cast<std::size_t>(it - header.begin());
      }
    }
    return std::nullopt;
  };
  const auto lat_c = find({"lat", "latitude"});
  const auto lon_c = find({"lon", "longitude", "lng"});
  if (!lat_c || !lon_c) throw SchemaError("settlement CSV needs lat and lon columns");
  const auto name_c = find({"name"});
  const auto type_c = find({"type", "kind", "place"});

  std::vector<std::string> row;
  while (reader.next(row)) {
    if (row.size() == 1 && row[0].empty()) continue;
    Settlement s;
    if (*lat_c >= row.size() || *lon_c >= row.size() || !parse_double(row[*lat_c], s.lat) ||
        !parse_double(row[*lon_c], s.lon) || !valid_coordinate({s.lat, s.lon})) {
      ++out.skipped;
      continue;
    }
    if (name_c && *name_c < row.size()) s.name = row[*name_c] == "-" ? std::string() : row[*name_c];
    if (type_c && *type_c < row.size()) s.kind = normalize_settlement_kind(row[*type_c]);
    out.settlements.push_back(std::move(s));
  }
  return out;
}

SettlementLoad load_settlements(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open settlement file " + path.string());
  const auto ext = path.extension().string();
  if (ext == ".csv") return load_settlements_csv(in);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError("settlement file " + path.string() + " is not valid JSON: " + e.what());
  }
  return load_settlements_geojson(doc);
}

nlohmann::json settlements_to_geojson(const std::vector<Settlement>& settlements) {
  auto features = nlohmann::json::array();
  for (const Settlement& s : settlements) {
    features.push_back({{"type", "Feature"},
                        {"geometry", point_geometry(s.lat, s.lon)},
                        {"properties", {{"name", s.name}, {"place", s.kind}}}});
  }
  return {{"type", "FeatureCollection"}, {"features", std::move(features)}};
}

}  // namespace loci
