#include "loci/service/config.hpp"

#include <fstream>

#include "loci/errors.hpp"

namespace loci::service {

std::filesystem::path ServiceConfig::resolved_fixtures_dir() const {
  return fixtures_dir.empty() ? data_dir / "stations" : fixtures_dir;
}

std::filesystem::path ServiceConfig::resolved_settlements() const {
  if (!settlements.empty()) return settlements;
  for (const char* name : {"settlements.geojson", "settlements.json", "settlements.csv"}) {
    if (std::filesystem::exists(data_dir / name)) return data_dir / name;
  }
  return {};
}

namespace {

template <typename T>
void read(const nlohmann::json& j, const char* key, T& out) {
  if (!j.contains(key) || j[key].is_null()) return;
  try {
    out = j[key].get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParameterError(std::string("config key '") + key + "' has the wrong type");
  }
}

void read_path(const nlohmann::json& j, const char* key, std::filesystem::path& out) {
  std::string value;
  read(j, key, value);
  if (!value.empty()) out = value;
}

}  // namespace

ServiceConfig config_from_json(const nlohmann::json& j, ServiceConfig base) {
  if (!j.is_object()) throw ParameterError("config must be a JSON object");
  ServiceConfig c = std::move(base);
  read(j, "host", c.host);
  read(j, "port", c.port);
  read_path(j, "data_dir", c.data_dir);
  read(j, "provider", c.provider);
  read_path(j, "fixtures_dir", c.fixtures_dir);
  read_path(j, "settlements", c.settlements);
  read(j, "api_key_env", c.live.api_key_env);
  read(j, "live_base_url", c.live.base_url);
  read(j, "live_api_host", c.live.api_host);
  std::int64_t timeout_ms = c.live.timeout.count();
  read(j, "timeout_ms", timeout_ms);
  c.live.timeout = std::chrono::milliseconds{timeout_ms};
  read(j, "max_retries", c.live.max_retries);
  read(j, "cors_origin", c.cors_origin);
  read(j, "point_ceiling", c.point_ceiling);
  read(j, "cache_capacity", c.cache_capacity);
  if (c.provider != "fixtures" && c.provider != "live") {
    throw ParameterError("provider must be 'fixtures' or 'live', got '" + c.provider + "'");
  }
  return c;
}

ServiceConfig load_service_config(const std::filesystem::path& path, ServiceConfig base) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open config file " + path.string());
  try {
    return config_from_json(nlohmann::json::parse(in), std::move(base));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParameterError("config file " + path.string() + " is not valid JSON: " + e.what());
  }
}

std::shared_ptr<StationProvider> make_provider(const ServiceConfig& config) {
  if (config.provider == "live") {
    return std::make_shared<CachingStationProvider>(std::make_shared<MeteostatClient>(config.live));
  }
  const auto dir = config.resolved_fixtures_dir();
  if (!std::filesystem::exists(dir / "stations.csv")) return nullptr;
  return std::make_shared<CachingStationProvider>(std::make_shared<FixtureStationProvider>(dir));
}

}  // namespace loci::service
