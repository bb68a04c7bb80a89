#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "loci/series.hpp"
#include "loci/track.hpp"

namespace loci {

/// Quality of attaching station temperatures to a track.
struct JoinReport {
  /// Percentage (0..100) of all track points that found a station sample.
  double matched_fraction = 0.0;
  std::size_t matched = 0;
  std::size_t total = 0;
  /// Present only when the track had native temperatures on at least two
  /// matched points with non-zero variance.
  std::optional<double> r_squared_zero_centered;
  std::optional<double> offset_study_minus_station;
  std::size_t fit_pairs = 0;
  Duration tolerance{0};
  bool fuzzy = false;
  std::string station_id;
};

nlohmann::json to_json(const JoinReport& report);

struct JoinResult {
  /// Copy of the input track whose temperatures come only from the station:
  /// matched points carry the station value, unmatched points none.
  Track track;
  JoinReport report;
};

/// Half the median gap between consecutive fixes. Throws DomainError for
/// fewer than two points.
Duration fuzzy_tolerance(const Track& track);

/// Matches every fix to the nearest-in-time series sample with
/// |dt| <= tolerance; equidistant candidates resolve to the earlier sample.
/// Tolerance 0 is an exact join. A sample may serve any number of fixes.
JoinResult join_temperature(const Track& track, const StationSeries& series, Duration tolerance);

struct Fit {
  double r_squared_zero_centered = 0.0;
  /// mean(study) - mean(station).
  double offset = 0.0;
};

/// Zero-centered coefficient of determination of the station series against
/// the study series, plus the mean offset:
///
///   s' = study - mean(study),  t' = station - mean(station)
///   R^2 = 1 - sum (s'_i - t'_i)^2 / sum s'_i^2
///
/// Throws DomainError if the lengths differ, n < 2, or the study series is
/// constant.
Fit compute_fit(std::span<const double> study, std::span<const double> station);

}  // namespace loci
