#pragma once

#include "loci/features.hpp"
#include "loci/labeling.hpp"
#include "loci/matrix.hpp"

namespace loci {

/// DBSCAN over Euclidean distance.
///
/// The neighborhood of a point is the closed ball `dist <= epsilon` and
/// includes the point itself; a point is core when its neighborhood holds at
/// least `min_pts` points. Points are visited in row order and each new
/// cluster is expanded breadth-first with neighbors in ascending row order, so
/// a border point reachable from two clusters joins whichever is discovered
/// first. Unreached points are labeled kNoise.
///
/// Up to three columns are bucketed into a uniform grid whose cells are
/// smaller than epsilon, so a dense cell yields core points without range
/// queries. Wider inputs fall back to brute-force queries.
/// Throws ParameterError for non-finite or non-positive epsilon or
/// min_pts < 1. The feature space of the result is inferred from the column
/// count (3 columns mean temp_influenced).
ClusterLabeling dbscan(const Matrix& points, const DbscanParams& params);

inline ClusterLabeling dbscan(const ScaledMatrix& scaled, double epsilon, int min_pts) {
  return dbscan(scaled.values, DbscanParams{epsilon, min_pts});
}

}  // namespace loci
