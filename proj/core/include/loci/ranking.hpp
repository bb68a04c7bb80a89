#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "loci/centroids.hpp"
#include "loci/settlement.hpp"

namespace loci {

enum class RankStrategy { nearest_assignment, kmeans_seeded };

std::string_view to_string(RankStrategy strategy);
std::optional<RankStrategy> rank_strategy_from_string(std::string_view text);

struct RankOptions {
  RankStrategy strategy = RankStrategy::nearest_assignment;
  /// NearestAssignment only: centroids farther than this from every
  /// settlement stay unassigned.
  std::optional<double> radius_km;
  std::uint64_t seed = 0;
};

struct RankingRow {
  Settlement settlement;
  std::size_t centroid_count = 0;
};

/// Settlements by associated centroid count, descending; ties by name, then
/// longitude and latitude.
struct SettlementRanking {
  std::vector<RankingRow> rows;
  RankOptions params;
  std::size_t total_centroids = 0;
  std::size_t unassigned = 0;
};

/// Ranks settlements by the centroids associated with them.
///
/// nearest_assignment: each centroid counts for its great-circle-nearest
/// settlement (equal distances go to the smaller name, then smaller lon/lat).
///
/// kmeans_seeded: k-means over centroid (lat, lon) with one seed per
/// settlement; each converged cluster is credited to the settlement nearest
/// its final center. When there are fewer centroids than settlements, only
/// the settlements nearest to some centroid seed the run (still one per
/// centroid at most).
///
/// Throws ParameterError if `settlements` is empty.
SettlementRanking rank_settlements(std::span<const Centroid> centroids, std::span<const Settlement> settlements,
                                   const RankOptions& options = {});

/// WKT `POINT (lon lat)`.
std::string wkt_point(double lat, double lon);

/// Columns geometry,name,type,count.
void write_ranking_csv(std::ostream& out, const SettlementRanking& ranking);
nlohmann::json ranking_to_json(const SettlementRanking& ranking);

}  // namespace loci
