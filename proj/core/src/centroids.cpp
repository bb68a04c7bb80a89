#include "loci/centroids.hpp"

#include <algorithm>
#include <limits>

#include "loci/errors.hpp"

namespace loci {

std::vector<Centroid> extract_centroids(const Track& track, const ClusterLabeling& labeling,
                                        std::span<const std::size_t> point_index, CentroidProvenance provenance) {
  const std::size_t n = labeling.labels.size();
  if (point_index.empty() && n != track.points.size()) {
    throw ParameterError("labeling has " + std::to_string(n) + " labels for " +
                         std::to_string(track.points.size()) + " points");
  }
  if (!point_index.empty() && point_index.size() != n) {
    throw ParameterError("point_index and labeling differ in length");
  }
  provenance.feature_space = labeling.feature_space;
  if (provenance.individual_id.empty()) provenance.individual_id = track.individual_id;

  struct Accumulator {
    double lat = 0.0, lon = 0.0;
    double lat_lo = std::numeric_limits<double>::infinity(), lat_hi = -std::numeric_limits<double>::infinity();
    double lon_lo = std::numeric_limits<double>::infinity(), lon_hi = -std::numeric_limits<double>::infinity();
    std::size_t count = 0;
  };
  std::vector<Accumulator> acc(static_cast<std::size_t>(std::max(labeling.clusters, 0)));

  for (std::size_t r = 0; r < n; ++r) {
    const int label = labeling.labels[r];
    if (label < 0) continue;
    if (label >= labeling.clusters) throw ParameterError("label " + std::to_string(label) + " out of range");
    const std::size_t idx = point_index.empty() ? r : point_index[r];
    if (idx >= track.points.size()) throw ParameterError("point index out of range");
    const TrackPoint& p = track.points[idx];
    Accumulator& a = acc[static_cast<std::size_t>(label)];
    ++a.count;
    // Running mean: exact for identical members.
    a.lat += (p.lat - a.lat) / static_cast<double>(a.count);
    a.lon += (p.lon - a.lon) / static_cast<double>(a.count);
    a.lat_lo = std::min(a.lat_lo, p.lat);
    a.lat_hi = std::max(a.lat_hi, p.lat);
    a.lon_lo = std::min(a.lon_lo, p.lon);
    a.lon_hi = std::max(a.lon_hi, p.lon);
  }

  std::vector<Centroid> out;
  for (std::size_t c = 0; c < acc.size(); ++c) {
    const Accumulator& a = acc[c];
    if (a.count == 0) continue;
    out.push_back(Centroid{std::clamp(a.lat, a.lat_lo, a.lat_hi), std::clamp(a.lon, a.lon_lo, a.lon_hi),
                           static_cast<int>(c), a.count, provenance});
  }
  return out;
}

}  // namespace loci
