#include "loci/track.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <unordered_map>

#include "loci/csv.hpp"
#include "loci/errors.hpp"

namespace loci {

std::string_view to_string(TempSource source) {
  switch (source) {
    case TempSource::none: return "none";
    case TempSource::native: return "native";
    case TempSource::station_exact: return "station_exact";
    case TempSource::station_fuzzy: return "station_fuzzy";
  }
  return "none";
}

std::optional<TempSource> temp_source_from_string(std::string_view text) {
  if (text == "none" || text.empty()) return TempSource::none;
  if (text == "native") return TempSource::native;
  if (text == "station_exact") return TempSource::station_exact;
  if (text == "station_fuzzy") return TempSource::station_fuzzy;
  return std::nullopt;
}

bool Track::has_any_temperature() const {
  return std::any_of(points.begin(), points.end(), [](const TrackPoint& p) { return p.temperature.has_value(); });
}

bool Track::all_have_temperature() const {
  return std::all_of(points.begin(), points.end(), [](const TrackPoint& p) { return p.temperature.has_value(); });
}

double median_of(std::vector<double> values) {
  if (values.empty()) throw DomainError("median of an empty sample");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return lower + (upper - lower) / 2.0;
}

std::optional<Duration> median_interval(std::span<const TrackPoint> points) {
  if (points.size() < 2) return std::nullopt;
  std::vector<std::int64_t> deltas;
  deltas.reserve(points.size() - 1);
  for (std::size_t i = 1; i < points.size(); ++i) {
    deltas.push_back(std::chrono::duration_cast<Duration>(points[i].timestamp - points[i - 1].timestamp).count());
  }
  const std::size_t mid = deltas.size() / 2;
  std::nth_element(deltas.begin(), deltas.begin() + static_cast<std::ptrdiff_t>(mid), deltas.end());
  const std::int64_t upper = deltas[mid];
  if (deltas.size() % 2 == 1) return Duration{upper};
  const std::int64_t lower = *std::max_element(deltas.begin(), deltas.begin() + static_cast<std::ptrdiff_t>(mid));
  // Whole-second inputs, so the midpoint is exact in milliseconds.
  return Duration{(lower + upper) / 2};
}

Track make_track(std::string individual_id, std::vector<TrackPoint> points) {
  std::stable_sort(points.begin(), points.end(),
                   [](const TrackPoint& a, const TrackPoint& b) { return a.timestamp < b.timestamp; });
  Track track;
  track.individual_id = std::move(individual_id);
  track.points = std::move(points);
  track.sampling_interval_median = median_interval(track.points);
  return track;
}

SchemaMap SchemaMap::canonical() {
  SchemaMap m;
  m.timestamp = "timestamp";
  m.lat = "lat";
  m.lon = "lon";
  m.individual_id = "individual_id";
  m.temperature = "temperature";
  m.temp_source = "temp_source";
  m.station_id = "station_id";
  return m;
}

SchemaMap SchemaMap::parse(std::string_view spec) {
  SchemaMap m;
  while (!spec.empty()) {
    const auto comma = spec.find(',');
    std::string_view item = spec.substr(0, comma);
    spec = comma == std::string_view::npos ? std::string_view{} : spec.substr(comma + 1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw ParameterError("schema entry '" + std::string(item) + "' is not key=column");
    const std::string_view key = item.substr(0, eq);
    const std::string value(item.substr(eq + 1));
    if (key == "timestamp") {
      m.timestamp = value;
    } else if (key == "lat") {
      m.lat = value;
    } else if (key == "lon") {
      m.lon = value;
    } else if (key == "id" || key == "individual_id") {
      m.individual_id = value;
    } else if (key == "temperature" || key == "temp") {
      m.temperature = value.empty() ? std::nullopt : std::optional<std::string>(value);
    } else if (key == "temp_source") {
      m.temp_source = value;
    } else if (key == "station_id") {
      m.station_id = value;
    } else {
      throw ParameterError("unknown schema key '" + std::string(key) + "'");
    }
  }
  return m;
}

void RejectionReport::add(std::size_t line) {
  ++count;
  if (first_lines.size() < kMaxListed) first_lines.push_back(line);
}

namespace {

std::optional<std::size_t> find_column(const std::vector<std::string>& header, std::string_view name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t require_column(const std::vector<std::string>& header, std::string_view name, std::string_view role) {
  if (auto idx = find_column(header, name)) return *idx;
  throw SchemaError("missing " + std::string(role) + " column '" + std::string(name) + "'");
}

}  // namespace

ParseResult parse_tracks(std::istream& source, const SchemaMap& schema, const ParseOptions& options) {
  CsvReader reader(source);
  std::vector<std::string> header;
  ParseResult result;
  if (!reader.next(header)) return result;
  for (auto& h : header) {
    while (!h.empty() && (h.back() == ' ' || h.back() == '\t')) h.pop_back();
  }

  const std::size_t ts_col = require_column(header, schema.timestamp, "timestamp");
  const std::size_t lat_col = require_column(header, schema.lat, "latitude");
  const std::size_t lon_col = require_column(header, schema.lon, "longitude");
  const std::size_t id_col = require_column(header, schema.individual_id, "individual id");
  const auto temp_col = schema.temperature ? find_column(header, *schema.temperature) : std::nullopt;
  const auto source_col = schema.temp_source ? find_column(header, *schema.temp_source) : std::nullopt;
  const auto station_col = schema.station_id ? find_column(header, *schema.station_id) : std::nullopt;

  std::map<std::string, std::vector<TrackPoint>> by_id;
  std::map<std::string, std::string> station_by_id;
  std::set<std::pair<std::string, std::int64_t>> seen;
  std::size_t data_rows = 0;

  std::vector<std::string> row;
  while (reader.next(row)) {
    if (row.size() == 1 && row[0].empty()) continue;
    ++data_rows;
    const std::size_t line = reader.record_line();
    auto cell = [&](std::size_t col) -> std::string_view {
      return col < row.size() ? std::string_view(row[col]) : std::string_view{};
    };

    TrackPoint p;
    const auto ts = parse_timestamp(cell(ts_col));
    if (!ts || !parse_double(cell(lat_col), p.lat) || !parse_double(cell(lon_col), p.lon) ||
        !valid_coordinate({p.lat, p.lon}) || cell(id_col).empty()) {
      result.rejections.add(line);
      continue;
    }
    p.timestamp = *ts;
    p.individual_id = std::string(cell(id_col));
    if (temp_col) {
      double t = 0.0;
      if (parse_double(cell(*temp_col), t) && std::isfinite(t)) {
        p.temperature = t;
        p.temp_source = TempSource::native;
      }
    }
    if (source_col && p.temperature) {
      if (auto s = temp_source_from_string(cell(*source_col)); s && *s != TempSource::none) p.temp_source = *s;
    }
    if (station_col && !cell(*station_col).empty()) {
      station_by_id.try_emplace(p.individual_id, std::string(cell(*station_col)));
    }
    if (options.dedup && !seen.emplace(p.individual_id, p.timestamp.time_since_epoch().count()).second) {
      ++result.duplicates_dropped;
      continue;
    }
    by_id[p.individual_id].push_back(std::move(p));
  }

  if (data_rows > 0 && by_id.empty() && result.duplicates_dropped == 0) {
    throw EmptyInputError("no valid rows among " + std::to_string(data_rows) + " data rows");
  }

  for (auto& [id, pts] : by_id) {
    Track track = make_track(id, std::move(pts));
    if (auto it = station_by_id.find(id); it != station_by_id.end()) track.station_id = it->second;
    result.tracks.push_back(std::move(track));
  }
  return result;
}

void write_tracks_csv(std::ostream& out, std::span<const Track> tracks) {
  const bool enriched = std::any_of(tracks.begin(), tracks.end(), [](const Track& t) { return !t.station_id.empty(); });
  out << "timestamp,lat,lon,temperature,individual_id";
  if (enriched) out << ",temp_source,station_id";
  out << '\n';
  for (const Track& track : tracks) {
    for (const TrackPoint& p : track.points) {
      out << format_timestamp(p.timestamp) << ',' << format_double(p.lat) << ',' << format_double(p.lon) << ',';
      if (p.temperature) out << format_double(*p.temperature);
      out << ',' << csv_escape(p.individual_id);
      if (enriched) {
        out << ',' << (p.temperature ? to_string(p.temp_source) : std::string_view{}) << ','
            << csv_escape(track.station_id);
      }
      out << '\n';
    }
  }
}

void write_track_csv(std::ostream& out, const Track& track) { write_tracks_csv(out, std::span(&track, 1)); }

GeoPoint median_coordinate(const Track& track) {
  if (track.points.empty()) throw DomainError("median coordinate of an empty track");
  std::vector<double> lats, lons;
  lats.reserve(track.points.size());
  lons.reserve(track.points.size());
  for (const auto& p : track.points) {
    lats.push_back(p.lat);
    lons.push_back(p.lon);
  }
  return {median_of(std::move(lats)), median_of(std::move(lons))};
}

}  // namespace loci
