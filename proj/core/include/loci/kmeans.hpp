#pragma once

#include <optional>
#include <vector>

#include "loci/labeling.hpp"
#include "loci/matrix.hpp"

namespace loci {

struct KMeansResult {
  ClusterLabeling labeling;
  /// k rows, one per cluster id.
  Matrix centers;
  /// Within-cluster sum of squared distances of the final assignment.
  double inertia = 0.0;
  /// Cost of each assignment step against the centers it was made with.
  std::vector<double> inertia_history;
  int iterations = 0;
  bool converged = false;
};

/// Lloyd's algorithm.
///
/// Seeding is k-means++ driven by a std::mt19937_64 seeded with
/// `params.seed`, unless `init_centers` is given (k rows, same dims as
/// `points`). Iterates assign/update until the assignment stops changing or
/// `params.max_iterations` assignment steps ran. A cluster that comes out of
/// an assignment empty is reseeded with the point farthest from its own
/// center (taken from a cluster with more than one member). Ties in
/// assignment go to the lower center index.
///
/// Throws ParameterError if k < 1, k > rows, or init_centers has the wrong
/// shape.
KMeansResult kmeans(const Matrix& points, const KMeansParams& params,
                    const std::optional<Matrix>& init_centers = std::nullopt);

}  // namespace loci
