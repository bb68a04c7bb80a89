#include "loci/meteostat_client.hpp"

#include <cstdlib>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "loci/csv.hpp"
#include "loci/errors.hpp"

namespace loci {

using nlohmann::json;

MeteostatClient::MeteostatClient(MeteostatConfig config) : config_(std::move(config)) {
  const auto scheme_end = config_.base_url.find("://");
  if (scheme_end == std::string::npos) throw ParameterError("base_url needs a scheme: " + config_.base_url);
  const auto path_start = config_.base_url.find('/', scheme_end + 3);
  origin_ = config_.base_url.substr(0, path_start);
  if (path_start != std::string::npos) prefix_ = config_.base_url.substr(path_start);
  while (!prefix_.empty() && prefix_.back() == '/') prefix_.pop_back();
}

json MeteostatClient::get(const std::string& path, const std::map<std::string, std::string>& query) const {
  httplib::Headers headers;
  if (!config_.api_key_env.empty()) {
    const char* key = std::getenv(config_.api_key_env.c_str());
    if (key == nullptr || *key == '\0') {
      throw ProviderError("live station provider needs an API key in $" + config_.api_key_env);
    }
    headers.emplace(config_.api_key_header, key);
  }
  if (!config_.api_host.empty()) headers.emplace("x-rapidapi-host", config_.api_host);

  httplib::Params params(query.begin(), query.end());
  const std::string target = httplib::append_query_params(prefix_ + path, params);

  std::string failure;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(config_.backoff * (1 << (attempt - 1)));
    httplib::Client client(origin_);
    client.set_connection_timeout(config_.timeout);
    client.set_read_timeout(config_.timeout);
    auto res = client.Get(target, headers);
    if (!res) {
      failure = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 429 || res->status >= 500) {
      failure = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw ProviderError("GET " + path + " returned HTTP " + std::to_string(res->status));
    }
    try {
      return json::parse(res->body);
    } catch (const json::parse_error& e) {
      throw ProviderError("GET " + path + " returned invalid JSON: " + e.what());
    }
  }
  throw ProviderError("GET " + path + " failed after " + std::to_string(config_.max_retries + 1) +
                      " attempts (" + failure + ")");
}

namespace {

std::string station_name(const json& name) {
  if (name.is_string()) return name.get<std::string>();
  if (name.is_object()) {
    if (name.contains("en") && name["en"].is_string()) return name["en"].get<std::string>();
    for (const auto& [lang, value] : name.items()) {
      if (value.is_string()) return value.get<std::string>();
    }
  }
  return {};
}

std::optional<Timestamp> date_field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key) || !obj[key].is_string()) return std::nullopt;
  return parse_timestamp(obj[key].get<std::string>());
}

std::string coordinate(double v) {
  std::ostringstream s;
  s.precision(8);
  s << v;
  return s.str();
}

}  // namespace

std::vector<StationInfo> MeteostatClient::nearby(GeoPoint center, double radius_km) {
  const json list = get("/stations/nearby", {{"lat", coordinate(center.lat)},
                                             {"lon", coordinate(center.lon)},
                                             {"limit", std::to_string(config_.candidate_limit)},
                                             {"radius", std::to_string(static_cast<long>(std::ceil(radius_km)))}});
  if (!list.contains("data") || !list["data"].is_array()) {
    if (list.contains("data") && list["data"].is_null()) return {};
    throw ProviderError("nearby-stations response has no data array");
  }

  std::vector<StationInfo> out;
  for (const json& entry : list["data"]) {
    if (!entry.contains("id") || !entry["id"].is_string()) continue;
    const std::string id = entry["id"].get<std::string>();
    const json meta = get("/stations/meta", {{"id", id}});
    const json& data = meta.contains("data") ? meta["data"] : json();
    if (!data.is_object() || !data.contains("location")) throw ProviderError("station " + id + " has no metadata");
    const json& loc = data["location"];
    StationInfo info;
    info.station_id = id;
    info.name = station_name(data.contains("name") ? data["name"] : entry.value("name", json()));
    info.lat = loc.value("latitude", 0.0);
    info.lon = loc.value("longitude", 0.0);
    if (data.contains("inventory") && data["inventory"].contains("hourly")) {
      const json& inv = data["inventory"]["hourly"];
      info.coverage_start = date_field(inv, "start");
      if (auto end = date_field(inv, "end")) info.coverage_end = *end + std::chrono::hours{24} - std::chrono::seconds{1};
      if (inv.is_object() && inv.contains("start") && inv["start"].is_null()) continue;  // no hourly archive
    }
    out.push_back(std::move(info));
  }
  return out;
}

std::vector<RawSample> MeteostatClient::hourly(const std::string& station_id, Timestamp start, Timestamp end) {
  using namespace std::chrono;
  std::vector<RawSample> out;
  if (end < start) return out;
  const sys_days last_day = floor<days>(end);
  for (sys_days day = floor<days>(start); day <= last_day; day += days{config_.max_days_per_request}) {
    const sys_days chunk_end = std::min(last_day, day + days{config_.max_days_per_request - 1});
    const json page = get("/stations/hourly", {{"station", station_id},
                                              {"start", format_date(day)},
                                              {"end", format_date(chunk_end)},
                                              {"tz", "UTC"}});
    if (!page.contains("data") || page["data"].is_null()) continue;
    if (!page["data"].is_array()) throw ProviderError("hourly response for " + station_id + " has no data array");
    for (const json& row : page["data"]) {
      if (!row.contains("time") || !row["time"].is_string()) continue;
      const auto t = parse_timestamp(row["time"].get<std::string>());
      if (!t) throw ProviderError("hourly response for " + station_id + " has a bad time field");
      if (!row.contains("temp") || !row["temp"].is_number()) continue;
      if (*t < start || *t > end) continue;
      out.push_back({*t, row["temp"].get<double>()});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const RawSample& a, const RawSample& b) { return a.time < b.time; });
  return out;
}

}  // namespace loci
