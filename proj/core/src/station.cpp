#include "loci/station.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "loci/csv.hpp"
#include "loci/errors.hpp"

namespace loci {

bool StationInfo::covers(Timestamp begin, Timestamp end) const {
  if (coverage_start && *coverage_start > end) return false;
  if (coverage_end && *coverage_end < begin) return false;
  return true;
}

Station find_station(const Track& track, StationProvider& provider, const StationSearch& search) {
  if (track.points.empty()) throw DomainError("cannot locate a station for an empty track");
  const GeoPoint center = median_coordinate(track);
  const Timestamp begin = track.points.front().timestamp;
  const Timestamp end = track.points.back().timestamp;

  std::optional<Station> best;
  for (const StationInfo& info : provider.nearby(center, search.radius_km)) {
    if (!info.covers(begin, end)) continue;
    const double d = haversine_km(center, {info.lat, info.lon});
    if (d > search.radius_km) continue;
    if (!best || d < best->distance_km || (d == best->distance_km && info.station_id < best->station_id)) {
      best = Station{info.station_id, info.name, info.lat, info.lon, d};
    }
  }
  if (!best) {
    std::ostringstream msg;
    msg << "no weather station within " << search.radius_km << " km of (" << center.lat << ", " << center.lon
        << ") covers " << format_timestamp(begin) << " .. " << format_timestamp(end)
        << "; try a larger search radius";
    throw NoStationError(msg.str());
  }
  return *best;
}

FixtureStationProvider::FixtureStationProvider(std::filesystem::path directory) : directory_(std::move(directory)) {
  std::ifstream in(directory_ / "stations.csv");
  if (!in) throw ProviderError("fixture directory " + directory_.string() + " has no stations.csv");
  CsvReader reader(in);
  std::vector<std::string> row;
  if (!reader.next(row)) throw ProviderError("stations.csv is empty");
  auto col = [&](std::string_view name) -> std::size_t {
    const auto it = std::find(row.begin(), row.end(), name);
    if (it == row.end()) throw ProviderError("stations.csv lacks column '" + std::string(name) + "'");
    return static_cast<std::size_t>(it - row.begin());
  };
  const std::size_t id_c = col("id"), name_c = col("name"), lat_c = col("lat"), lon_c = col("lon");
  const std::size_t width = std::max({id_c, name_c, lat_c, lon_c}) + 1;

  while (reader.next(row)) {
    if (row.size() == 1 && row[0].empty()) continue;
    StationInfo s;
    if (row.size() < width || row[id_c].empty() || !parse_double(row[lat_c], s.lat) ||
        !parse_double(row[lon_c], s.lon) || !valid_coordinate({s.lat, s.lon})) {
      throw ProviderError("stations.csv line " + std::to_string(reader.record_line()) + " is malformed");
    }
    s.station_id = row[id_c];
    s.name = row[name_c];
    stations_.push_back(std::move(s));
  }
}

std::shared_ptr<const std::vector<RawSample>> FixtureStationProvider::load(const std::string& station_id) {
  {
    std::lock_guard lock(mutex_);
    if (auto it = series_.find(station_id); it != series_.end()) return it->second;
  }
  auto samples = std::make_shared<std::vector<RawSample>>();
  std::ifstream in(directory_ / (station_id + ".csv"));
  if (in) {
    CsvReader reader(in);
    std::vector<std::string> row;
    reader.next(row);
    while (reader.next(row)) {
      if (row.size() < 2) continue;
      const auto t = parse_timestamp(row[0]);
      double temp = 0.0;
      if (!t) throw ProviderError("station " + station_id + " line " + std::to_string(reader.record_line()) +
                                  ": bad timestamp");
      if (!parse_double(row[1], temp) || !std::isfinite(temp)) continue;
      samples->push_back({*t, temp});
    }
    std::stable_sort(samples->begin(), samples->end(),
                     [](const RawSample& a, const RawSample& b) { return a.time < b.time; });
  }
  std::lock_guard lock(mutex_);
  return series_.try_emplace(station_id, std::move(samples)).first->second;
}

std::vector<StationInfo> FixtureStationProvider::nearby(GeoPoint center, double radius_km) {
  std::vector<StationInfo> out;
  for (const StationInfo& s : stations_) {
    if (haversine_km(center, {s.lat, s.lon}) > radius_km) continue;
    StationInfo info = s;
    const auto series = load(s.station_id);
    if (series->empty()) continue;
    info.coverage_start = series->front().time;
    info.coverage_end = series->back().time;
    out.push_back(std::move(info));
  }
  return out;
}

std::vector<RawSample> FixtureStationProvider::hourly(const std::string& station_id, Timestamp start, Timestamp end) {
  const bool known = std::any_of(stations_.begin(), stations_.end(),
                                 [&](const StationInfo& s) { return s.station_id == station_id; });
  if (!known) throw ProviderError("unknown station '" + station_id + "'");
  const auto series = load(station_id);
  std::vector<RawSample> out;
  for (const RawSample& s : *series) {
    if (s.time >= start && s.time <= end) out.push_back(s);
  }
  return out;
}

void write_station_csv(std::ostream& out, std::span<const RawSample> samples) {
  out << "timestamp,temp_c\n";
  for (const RawSample& s : samples) out << format_timestamp(s.time) << ',' << format_double(s.temperature_c) << '\n';
}

std::vector<RawSample> CachingStationProvider::hourly(const std::string& station_id, Timestamp start, Timestamp end) {
  Key key{station_id, start.time_since_epoch().count(), end.time_since_epoch().count()};
  {
    std::shared_lock lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) {
      ++hits_;
      return it->second;
    }
  }
  auto fetched = inner_->hourly(station_id, start, end);
  std::unique_lock lock(mutex_);
  ++misses_;
  cache_.insert_or_assign(std::move(key), fetched);
  return fetched;
}


}  // namespace loci
