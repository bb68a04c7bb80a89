#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "loci/features.hpp"
#include "loci/labeling.hpp"
#include "loci/track.hpp"

namespace loci {

struct CentroidProvenance {
  FeatureSpace feature_space = FeatureSpace::without_temp;
  bool fuzzy_enrichment = false;
  std::string dataset_id;
  std::string individual_id;

  friend bool operator==(const CentroidProvenance&, const CentroidProvenance&) = default;
};

struct Centroid {
  double lat = 0.0;
  double lon = 0.0;
  int cluster_id = 0;
  std::size_t member_count = 0;
  CentroidProvenance provenance;

  friend bool operator==(const Centroid&, const Centroid&) = default;
};

/// One centroid per non-noise cluster, ordered by cluster id: the mean of
/// the members' raw lat/lon, whatever feature space produced the labels.
///
/// `point_index[r]` names the track point behind `labeling.labels[r]`
/// (FeatureMatrix::point_index); empty means labels align with
/// `track.points` one-to-one. The provenance feature space is taken from the
/// labeling.
std::vector<Centroid> extract_centroids(const Track& track, const ClusterLabeling& labeling,
                                        std::span<const std::size_t> point_index = {},
                                        CentroidProvenance provenance = {});

}  // namespace loci
