#include "loci/series.hpp"

#include <algorithm>
#include <cmath>

#include "loci/errors.hpp"

namespace loci {

std::chrono::seconds default_grid_interval(const std::optional<Duration>& sampling_interval_median) {
  if (!sampling_interval_median) return kMinGridInterval;
  return std::max(std::chrono::duration_cast<std::chrono::seconds>(*sampling_interval_median), kMinGridInterval);
}

StationSeries normalize_interpolate(std::span<const RawSample> raw, std::chrono::seconds target_interval,
                                    const InterpolationOptions& options) {
  if (raw.empty()) throw DomainError("cannot interpolate an empty station series");
  if (target_interval.count() <= 0) throw ParameterError("grid interval must be positive");

  std::vector<RawSample> samples;
  samples.reserve(raw.size());
  for (const RawSample& s : raw) {
    if (!std::isfinite(s.temperature_c)) throw DomainError("non-finite station temperature");
    if (!samples.empty()) {
      if (s.time < samples.back().time) throw DomainError("station series is not in ascending time order");
      if (s.time == samples.back().time) continue;
    }
    samples.push_back(s);
  }

  StationSeries out;
  out.grid_interval = target_interval;
  const Timestamp first = samples.front().time;
  const Timestamp last = samples.back().time;
  std::size_t upper = 0;  // first raw sample with time >= grid time

  for (Timestamp t = first; t <= last; t += target_interval) {
    while (samples[upper].time < t) ++upper;
    const RawSample& next = samples[upper];
    if (next.time == t) {
      out.samples.push_back({t, next.temperature_c, false});
      continue;
    }
    const RawSample& prev = samples[upper - 1];
    const auto gap = next.time - prev.time;
    if (gap > options.max_gap) continue;
    const double w = static_cast<double>((t - prev.time).count()) / static_cast<double>(gap.count());
    out.samples.push_back({t, prev.temperature_c + w * (next.temperature_c - prev.temperature_c), true});
  }
  return out;
}

}  // namespace loci
