#pragma once

#include <chrono>
#include <optional>

#include "loci/join.hpp"
#include "loci/series.hpp"
#include "loci/station.hpp"

namespace loci {

struct EnrichOptions {
  /// Join within fuzzy_tolerance(track) instead of exactly.
  bool fuzzy = false;
  /// Series grid step; defaults to default_grid_interval(track).
  std::optional<std::chrono::seconds> grid_interval;
  InterpolationOptions interpolation;
  StationSearch search;
};

struct EnrichmentResult {
  Track track;
  JoinReport report;
  Station station;
  StationSeries series;
};

/// Locates the nearest covering station, fetches its hourly archive over the
/// track's span (padded by the interpolation gap limit), resamples it and joins
/// it onto the track. An empty archive yields a 0% report rather than an error.
EnrichmentResult enrich_track(const Track& track, StationProvider& provider, const EnrichOptions& options = {});

}  // namespace loci
