#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "loci/centroids.hpp"
#include "loci/labeling.hpp"
#include "loci/track.hpp"

namespace loci {

/// Labeled points as a FeatureCollection of Point features carrying
/// `point_index`, `label` and, when present, `temperature`.
nlohmann::json labeling_to_geojson(const Track& track, const ClusterLabeling& labeling,
                                   std::span<const std::size_t> point_index = {});

/// CSV with columns point_index,lat,lon,temperature,label.
void write_labeling_csv(std::ostream& out, const Track& track, const ClusterLabeling& labeling,
                        std::span<const std::size_t> point_index = {});

/// Centroids as Point features with cluster_id, member_count, feature_space,
/// fuzzy, dataset_id and individual_id properties.
nlohmann::json centroids_to_geojson(std::span<const Centroid> centroids);

/// Inverse of centroids_to_geojson. Non-point features are skipped.
std::vector<Centroid> centroids_from_geojson(const nlohmann::json& collection);

/// Every `stride`-th fix plus the last one, as Point features with
/// `timestamp` and optional `temperature`.
nlohmann::json track_to_geojson(const Track& track, std::size_t stride = 1);

/// Indices kept by decimation with the given stride: 0, s, 2s, ... and the
/// last index.
std::vector<std::size_t> decimation_indices(std::size_t count, std::size_t stride);

nlohmann::json point_geometry(double lat, double lon);

}  // namespace loci
