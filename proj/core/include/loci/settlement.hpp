#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace loci {

struct Settlement {
  double lat = 0.0;
  double lon = 0.0;
  std::string name;
  /// One of village, hamlet, town, camp, other.
  std::string kind = "other";

  friend bool operator==(const Settlement&, const Settlement&) = default;
};

/// Maps free-form place types onto the known kinds; anything else is "other".
std::string normalize_settlement_kind(std::string_view raw);

struct SettlementLoad {
  std::vector<Settlement> settlements;
  /// Features or rows skipped for non-point geometry or bad coordinates.
  std::size_t skipped = 0;
};

/// GeoJSON FeatureCollection of Points; `name` and `place` (or `type`/`kind`)
/// properties are read when present.
SettlementLoad load_settlements_geojson(const nlohmann::json& collection);

/// CSV with header columns name,type,lat,lon (`kind` accepted for `type`).
SettlementLoad load_settlements_csv(std::istream& in);

/// Dispatches on extension: .geojson/.json or .csv. Throws DataError if the
/// file cannot be read.
SettlementLoad load_settlements(const std::filesystem::path& path);

nlohmann::json settlements_to_geojson(const std::vector<Settlement>& settlements);

}  // namespace loci
