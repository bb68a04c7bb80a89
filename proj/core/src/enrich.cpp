#include "loci/enrich.hpp"

#include "loci/errors.hpp"

namespace loci {

EnrichmentResult enrich_track(const Track& track, StationProvider& provider, const EnrichOptions& options) {
  EnrichmentResult out;
  out.station = find_station(track, provider, options.search);

  const Timestamp start = track.points.front().timestamp - options.interpolation.max_gap;
  const Timestamp end = track.points.back().timestamp + options.interpolation.max_gap;
  const auto raw = provider.hourly(out.station.station_id, start, end);

  const auto interval = options.grid_interval.value_or(default_grid_interval(track.sampling_interval_median));
  if (!raw.empty()) out.series = normalize_interpolate(raw, interval, options.interpolation);
  out.series.station_id = out.station.station_id;
  out.series.grid_interval = interval;

  const Duration tolerance = options.fuzzy ? fuzzy_tolerance(track) : Duration{0};
  JoinResult joined = join_temperature(track, out.series, tolerance);
  out.track = std::move(joined.track);
  out.report = std::move(joined.report);
  return out;
}

}  // namespace loci
