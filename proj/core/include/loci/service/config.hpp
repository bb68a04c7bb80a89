#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "loci/meteostat_client.hpp"
#include "loci/station.hpp"

namespace loci::service {

/// Service settings. Loaded from a JSON file; every key is optional:
///
///   { "host": "127.0.0.1", "port": 8080, "data_dir": "data",
///     "provider": "fixtures" | "live", "fixtures_dir": "data/stations",
///     "settlements": "data/settlements.geojson",
///     "api_key_env": "METEOSTAT_API_KEY", "live_base_url": "https://...",
///     "timeout_ms": 10000, "max_retries": 3,
///     "cors_origin": "http://localhost:5173",
///     "point_ceiling": 200000, "cache_capacity": 64 }
struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::filesystem::path data_dir = ".";
  std::string provider = "fixtures";
  /// Defaults to <data_dir>/stations.
  std::filesystem::path fixtures_dir;
  /// Defaults to <data_dir>/settlements.geojson or settlements.csv.
  std::filesystem::path settlements;
  MeteostatConfig live;
  std::string cors_origin = "*";
  std::size_t point_ceiling = 200'000;
  std::size_t cache_capacity = 64;

  std::filesystem::path tracks_dir() const { return data_dir / "tracks"; }
  std::filesystem::path resolved_fixtures_dir() const;
  std::filesystem::path resolved_settlements() const;
};

/// Applies the keys present in `j` on top of `base`. Throws ParameterError on
/// wrongly typed values or an unknown provider.
ServiceConfig config_from_json(const nlohmann::json& j, ServiceConfig base = {});
ServiceConfig load_service_config(const std::filesystem::path& path, ServiceConfig base = {});

/// Provider described by the config, wrapped in a response cache. Returns null
/// for "fixtures" when the fixture directory does not exist.
std::shared_ptr<StationProvider> make_provider(const ServiceConfig& config);

}  // namespace loci::service
