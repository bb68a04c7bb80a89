#pragma once

#include <chrono>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "loci/station.hpp"

namespace loci {

struct MeteostatConfig {
  /// Scheme, host, optional port and optional path prefix.
  std::string base_url = "https://meteostat.p.rapidapi.com";
  /// Environment variable holding the API key; empty disables the key header.
  std::string api_key_env = "METEOSTAT_API_KEY";
  std::string api_key_header = "x-rapidapi-key";
  /// Sent as x-rapidapi-host when non-empty.
  std::string api_host = "meteostat.p.rapidapi.com";
  std::chrono::milliseconds timeout{10000};
  /// Extra attempts after a transport failure, HTTP 429 or 5xx.
  int max_retries = 3;
  /// First retry delay; doubles on each further attempt.
  std::chrono::milliseconds backoff{500};
  /// Candidates requested from the nearby-stations endpoint.
  std::size_t candidate_limit = 10;
  /// The hourly endpoint serves at most this many days per request.
  int max_days_per_request = 30;
};

/// Client for the Meteostat JSON API:
///
///   GET /stations/nearby?lat=..&lon=..&limit=..&radius=..
///   GET /stations/meta?id=..
///   GET /stations/hourly?station=..&start=YYYY-MM-DD&end=YYYY-MM-DD&tz=UTC
///
/// Every request opens its own connection, so one client can serve several
/// threads.
class MeteostatClient final : public StationProvider {
 public:
  explicit MeteostatClient(MeteostatConfig config = {});

  std::vector<StationInfo> nearby(GeoPoint center, double radius_km) override;
  std::vector<RawSample> hourly(const std::string& station_id, Timestamp start, Timestamp end) override;

 private:
  nlohmann::json get(const std::string& path, const std::map<std::string, std::string>& query) const;

  MeteostatConfig config_;
  std::string origin_;
  std::string prefix_;
};

}  // namespace loci
