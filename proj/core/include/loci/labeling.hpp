#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "loci/features.hpp"

namespace loci {

inline constexpr int kNoise = -1;

struct DbscanParams {
  /// Neighborhood radius in scaled feature space.
  double epsilon = 0.0;
  /// Core threshold, counting the point itself.
  int min_pts = 1;
};

struct KMeansParams {
  int k = 1;
  std::uint64_t seed = 0;
  int max_iterations = 300;
};

/// Per-point cluster labels. Clusters are numbered 0..clusters-1 in discovery
/// order; kNoise marks noise.
struct ClusterLabeling {
  std::vector<int> labels;
  int clusters = 0;
  std::variant<DbscanParams, KMeansParams> params;
  FeatureSpace feature_space = FeatureSpace::without_temp;

  std::size_t noise_count() const;
};

}  // namespace loci
