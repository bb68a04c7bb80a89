#pragma once

#include <chrono>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "loci/time.hpp"

namespace loci {

/// One hourly observation as delivered by a station archive.
struct RawSample {
  Timestamp time{};
  double temperature_c = 0.0;

  friend bool operator==(const RawSample&, const RawSample&) = default;
};

struct SeriesSample {
  Timestamp time{};
  double temperature_c = 0.0;
  /// True when the value was synthesized by interpolation.
  bool interpolated = false;

  friend bool operator==(const SeriesSample&, const SeriesSample&) = default;
};

/// Station temperatures on a regular grid; the grid may have holes where the
/// raw archive had long gaps.
struct StationSeries {
  std::string station_id;
  std::vector<SeriesSample> samples;
  std::chrono::seconds grid_interval{0};
};

struct InterpolationOptions {
  /// Raw gaps longer than this are left empty rather than bridged.
  std::chrono::seconds max_gap = std::chrono::hours{3};
};

inline constexpr std::chrono::seconds kMinGridInterval = std::chrono::minutes{10};

/// Grid interval used when none is given: the track's median sampling
/// interval (whole seconds) floored at ten minutes.
std::chrono::seconds default_grid_interval(const std::optional<Duration>& sampling_interval_median);

/// Resamples a raw series onto a grid anchored at the first raw timestamp with
/// step `target_interval`, linearly interpolating between the raw samples
/// that bracket each grid time. Grid times that coincide with a raw sample
/// take its value unflagged; grid times inside a raw gap wider than
/// `options.max_gap` are skipped.
///
/// Throws DomainError if `raw` is empty or not ascending, ParameterError for a
/// non-positive interval. Repeated raw timestamps keep the first value.
StationSeries normalize_interpolate(std::span<const RawSample> raw, std::chrono::seconds target_interval,
                                    const InterpolationOptions& options = {});

}  // namespace loci
