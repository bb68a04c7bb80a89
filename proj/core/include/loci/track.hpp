#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "loci/geo.hpp"
#include "loci/time.hpp"

namespace loci {

/// Where a point's temperature came from.
enum class TempSource { none, native, station_exact, station_fuzzy };

std::string_view to_string(TempSource source);
std::optional<TempSource> temp_source_from_string(std::string_view text);

/// One GPS fix.
struct TrackPoint {
  Timestamp timestamp{};
  double lat = 0.0;
  double lon = 0.0;
  std::optional<double> temperature;
  std::string individual_id;
  TempSource temp_source = TempSource::none;

  friend bool operator==(const TrackPoint&, const TrackPoint&) = default;
};

/// All fixes of one individual, sorted by timestamp (stable on ties).
struct Track {
  std::string individual_id;
  std::vector<TrackPoint> points;
  /// Median of consecutive timestamp differences; empty for fewer than two points.
  std::optional<Duration> sampling_interval_median;
  /// Station that supplied enriched temperatures, empty when none.
  std::string station_id;

  bool has_any_temperature() const;
  bool all_have_temperature() const;
};

/// Builds a track from unsorted points: stable-sorts by timestamp and
/// computes the sampling interval median.
Track make_track(std::string individual_id, std::vector<TrackPoint> points);

/// Median of consecutive timestamp differences. Even counts average the two
/// middle values. nullopt for fewer than two points.
std::optional<Duration> median_interval(std::span<const TrackPoint> points);

/// Maps logical fields to CSV column names.
struct SchemaMap {
  std::string timestamp = "timestamp";
  std::string lat = "location-lat";
  std::string lon = "location-long";
  std::string individual_id = "individual-local-identifier";
  /// Optional; the column may also be absent from the file.
  std::optional<std::string> temperature = "external-temperature";
  std::optional<std::string> temp_source;
  std::optional<std::string> station_id;

  /// Movebank export names (the defaults).
  static SchemaMap movebank() { return {}; }

  /// Names used by write_tracks_csv.
  static SchemaMap canonical();

  /// Parses `field=column` pairs separated by commas, e.g.
  /// `timestamp=time,lat=y,lon=x,id=tag,temperature=temp`. Unmentioned fields
  /// keep their Movebank defaults; `temperature=` disables temperature.
  /// Throws ParameterError on unknown keys.
  static SchemaMap parse(std::string_view spec);
};

struct RejectionReport {
  static constexpr std::size_t kMaxListed = 10;

  std::size_t count = 0;
  /// 1-based file line numbers of the first rejected rows.
  std::vector<std::size_t> first_lines;

  void add(std::size_t line);
};

struct ParseOptions {
  /// Drop rows repeating an earlier (individual, timestamp) pair.
  bool dedup = false;
};

struct ParseResult {
  /// One track per individual, ordered by individual id.
  std::vector<Track> tracks;
  RejectionReport rejections;
  std::size_t duplicates_dropped = 0;
};

/// Parses a tracking CSV. Throws SchemaError when a mandatory column is
/// missing and EmptyInputError when data rows exist but none is valid.
ParseResult parse_tracks(std::istream& source, const SchemaMap& schema = {}, const ParseOptions& options = {});

/// Writes tracks in the canonical layout
/// `timestamp,lat,lon,temperature,individual_id`. When any track carries
/// station temperatures, `temp_source,station_id` columns are appended.
void write_tracks_csv(std::ostream& out, std::span<const Track> tracks);
void write_track_csv(std::ostream& out, const Track& track);

/// Component-wise median of latitude and longitude. Throws DomainError on an
/// empty track.
GeoPoint median_coordinate(const Track& track);

/// Median of a sample (copied); even counts average the middle pair.
double median_of(std::vector<double> values);

}  // namespace loci
