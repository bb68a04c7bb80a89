#include "loci/features.hpp"

#include <algorithm>
#include <cmath>

#include "loci/errors.hpp"

namespace loci {

std::string_view to_string(FeatureSpace space) {
  return space == FeatureSpace::without_temp ? "without_temp" : "temp_influenced";
}

std::optional<FeatureSpace> feature_space_from_string(std::string_view text) {
  if (text == "without_temp" || text == "lat,lon") return FeatureSpace::without_temp;
  if (text == "temp_influenced" || text == "lat,lon,temp") return FeatureSpace::temp_influenced;
  return std::nullopt;
}

FeatureMatrix build_features(const Track& track, FeatureSpace space) {
  FeatureMatrix out;
  out.space = space;
  const bool with_temp = space == FeatureSpace::temp_influenced;
  out.values = Matrix(0, with_temp ? 3 : 2);
  out.point_index.reserve(track.points.size());

  for (std::size_t i = 0; i < track.points.size(); ++i) {
    const TrackPoint& p = track.points[i];
    if (with_temp) {
      if (!p.temperature) {
        ++out.excluded;
        continue;
      }
      const double row[3] = {p.lat, p.lon, *p.temperature};
      out.values.append_row(row);
    } else {
      const double row[2] = {p.lat, p.lon};
      out.values.append_row(row);
    }
    out.point_index.push_back(i);
  }

  if (with_temp && out.values.empty() && !track.points.empty()) {
    throw EmptyFeatureError("track '" + track.individual_id + "' has no temperature-bearing points");
  }
  return out;
}

std::vector<double> ScaledMatrix::inverse(std::span<const double> scaled_row) const {
  std::vector<double> raw(scaled_row.size());
  for (std::size_t c = 0; c < scaled_row.size(); ++c) raw[c] = scaled_row[c] * stds[c] + means[c];
  return raw;
}

ScaledMatrix standard_scale(const Matrix& raw, const ScaleOptions& options) {
  const std::size_t n = raw.rows();
  const std::size_t d = raw.dims();
  ScaledMatrix out{Matrix(n, d), std::vector<double>(d, 0.0), std::vector<double>(d, 0.0)};

  for (std::size_t c = 0; c < d; ++c) {
    const bool passthrough = std::find(options.passthrough_columns.begin(), options.passthrough_columns.end(), c) !=
                             options.passthrough_columns.end();
    if (passthrough) {
      out.stds[c] = 1.0;
      for (std::size_t r = 0; r < n; ++r) out.values(r, c) = raw(r, c);
      continue;
    }
    if (n == 0) continue;

    double lo = raw(0, c), hi = raw(0, c), sum = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      lo = std::min(lo, raw(r, c));
      hi = std::max(hi, raw(r, c));
      sum += raw(r, c);
    }
    const double mean = sum / static_cast<double>(n);
    out.means[c] = mean;
    // Exactly constant columns stay at zero; a rounded mean would otherwise
    // yield ~1e-17 deviations that blow up when divided.
    if (lo == hi) {
      out.means[c] = lo;
      continue;
    }
    double ss = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      const double dev = raw(r, c) - mean;
      ss += dev * dev;
    }
    const double sd = std::sqrt(ss / static_cast<double>(n));
    out.stds[c] = sd;
    for (std::size_t r = 0; r < n; ++r) out.values(r, c) = (raw(r, c) - mean) / sd;
  }
  return out;
}

}  // namespace loci
