#pragma once

#include <atomic>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <vector>

#include "loci/geo.hpp"
#include "loci/series.hpp"
#include "loci/time.hpp"
#include "loci/track.hpp"

namespace loci {

/// A station chosen for a track, with its distance from the track's median
/// coordinate.
struct Station {
  std::string station_id;
  std::string name;
  double lat = 0.0;
  double lon = 0.0;
  double distance_km = 0.0;
};

/// Directory entry returned by a provider search.
struct StationInfo {
  std::string station_id;
  std::string name;
  double lat = 0.0;
  double lon = 0.0;
  /// Span of the hourly archive; unknown bounds are treated as open.
  std::optional<Timestamp> coverage_start;
  std::optional<Timestamp> coverage_end;

  bool covers(Timestamp begin, Timestamp end) const;
};

/// Source of station metadata and hourly archives. Implementations must be
/// safe to call from several threads at once. Failures are reported as
/// ProviderError.
class StationProvider {
 public:
  virtual ~StationProvider() = default;

  /// Stations within `radius_km` of `center`, in no particular order.
  virtual std::vector<StationInfo> nearby(GeoPoint center, double radius_km) = 0;

  /// Hourly temperatures with start <= time <= end, ascending.
  virtual std::vector<RawSample> hourly(const std::string& station_id, Timestamp start, Timestamp end) = 0;
};

struct StationSearch {
  double radius_km = 100.0;
};

/// Nearest station (great-circle from the track's median coordinate) whose
/// archive overlaps the track's time span; equal distances resolve by
/// station id. Throws DomainError for an empty track and NoStationError when
/// nothing qualifies.
Station find_station(const Track& track, StationProvider& provider, const StationSearch& search = {});

/// Stations from a local directory:
///
///   stations.csv   id,name,lat,lon
///   <id>.csv       timestamp,temp_c   (ISO-8601 UTC, blank temp_c = missing)
///
/// Coverage is the first/last timestamp of each station file.
class FixtureStationProvider final : public StationProvider {
 public:
  /// Throws ProviderError if stations.csv is missing or malformed.
  explicit FixtureStationProvider(std::filesystem::path directory);

  std::vector<StationInfo> nearby(GeoPoint center, double radius_km) override;
  std::vector<RawSample> hourly(const std::string& station_id, Timestamp start, Timestamp end) override;

 private:
  std::shared_ptr<const std::vector<RawSample>> load(const std::string& station_id);

  std::filesystem::path directory_;
  std::vector<StationInfo> stations_;
  std::mutex mutex_;
  std::map<std::string, std::shared_ptr<const std::vector<RawSample>>> series_;
};

/// Writes a station archive in the fixture format.
void write_station_csv(std::ostream& out, std::span<const RawSample> samples);

/// Memoizes hourly() responses per (station, start, end). Concurrent readers
/// share the cache; concurrent writers race with last-write-wins.
class CachingStationProvider final : public StationProvider {
 public:
  explicit CachingStationProvider(std::shared_ptr<StationProvider> inner) : inner_(std::move(inner)) {}

  std::vector<StationInfo> nearby(GeoPoint center, double radius_km) override {
    return inner_->nearby(center, radius_km);
  }
  std::vector<RawSample> hourly(const std::string& station_id, Timestamp start, Timestamp end) override;

  std::size_t hits() const { return hits_.load(); }
  std::size_t misses() const { return misses_.load(); }

 private:
  using Key = std::tuple<std::string, std::int64_t, std::int64_t>;

  std::shared_ptr<StationProvider> inner_;
  mutable std::shared_mutex mutex_;
  std::map<Key, std::vector<RawSample>> cache_;
  std::atomic<std::size_t> hits_{0};
  std::atomic<std::size_t> misses_{0};
};

}  // namespace loci
