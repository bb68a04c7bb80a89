#include "loci/ranking.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <ostream>
#include <tuple>

#include "loci/csv.hpp"
#include "loci/errors.hpp"
#include "loci/geo.hpp"
#include "loci/kmeans.hpp"

namespace loci {

std::string_view to_string(RankStrategy strategy) {
  return strategy == RankStrategy::nearest_assignment ? "nearest" : "kmeans";
}

std::optional<RankStrategy> rank_strategy_from_string(std::string_view text) {
  if (text == "nearest" || text == "nearest_assignment") return RankStrategy::nearest_assignment;
  if (text == "kmeans" || text == "kmeans_seeded") return RankStrategy::kmeans_seeded;
  return std::nullopt;
}

namespace {

/// Order-independent tie break between settlements.
bool settlement_less(const Settlement& a, const Settlement& b) {
  return std::tie(a.name, a.lon, a.lat, a.kind) < std::tie(b.name, b.lon, b.lat, b.kind);
}

std::size_t nearest_settlement(GeoPoint p, std::span<const Settlement> settlements, double* distance = nullptr) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < settlements.size(); ++s) {
    const double d = haversine_km(p, {settlements[s].lat, settlements[s].lon});
    if (d < best_d || (d == best_d && settlement_less(settlements[s], settlements[best]))) {
      best = s;
      best_d = d;
    }
  }
  if (distance != nullptr) *distance = best_d;
  return best;
}

std::vector<std::size_t> count_nearest(std::span<const Centroid> centroids, std::span<const Settlement> settlements,
                                       std::optional<double> radius_km, std::size_t& unassigned) {
  std::vector<std::size_t> counts(settlements.size(), 0);
  for (const Centroid& c : centroids) {
    double d = 0.0;
    const std::size_t s = nearest_settlement({c.lat, c.lon}, settlements, &d);
    if (radius_km && d > *radius_km) {
      ++unassigned;
      continue;
    }
    ++counts[s];
  }
  return counts;
}

std::vector<std::size_t> count_kmeans(std::span<const Centroid> centroids, std::span<const Settlement> settlements,
                                      std::uint64_t seed) {
  std::vector<std::size_t> counts(settlements.size(), 0);
  if (centroids.empty()) return counts;

  std::vector<std::size_t> seeds(settlements.size());
  std::iota(seeds.begin(), seeds.end(), std::size_t{0});
  if (centroids.size() < settlements.size()) {
    std::vector<double> closest(settlements.size(), std::numeric_limits<double>::infinity());
    for (std::size_t s = 0; s < settlements.size(); ++s) {
      for (const Centroid& c : centroids) {
        closest[s] = std::min(closest[s], haversine_km({c.lat, c.lon}, {settlements[s].lat, settlements[s].lon}));
      }
    }
    std::sort(seeds.begin(), seeds.end(), [&](std::size_t a, std::size_t b) {
      if (closest[a] != closest[b]) return closest[a] < closest[b];
      return settlement_less(settlements[a], settlements[b]);
    });
    seeds.resize(centroids.size());
  }
  std::sort(seeds.begin(), seeds.end(),
            [&](std::size_t a, std::size_t b) { return settlement_less(settlements[a], settlements[b]); });

  Matrix points(0, 2);
  for (const Centroid& c : centroids) {
    const double row[2] = {c.lat, c.lon};
    points.append_row(row);
  }
  Matrix init(0, 2);
  for (std::size_t s : seeds) {
    const double row[2] = {settlements[s].lat, settlements[s].lon};
    init.append_row(row);
  }

  const KMeansResult km = kmeans(points, KMeansParams{static_cast<int>(seeds.size()), seed, 300}, init);
  std::vector<std::size_t> sizes(seeds.size(), 0);
  for (int label : km.labeling.labels) ++sizes[static_cast<std::size_t>(label)];
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    if (sizes[c] == 0) continue;
    counts[nearest_settlement({km.centers(c, 0), km.centers(c, 1)}, settlements)] += sizes[c];
  }
  return counts;
}

}  // namespace

SettlementRanking rank_settlements(std::span<const Centroid> centroids, std::span<const Settlement> settlements,
                                   const RankOptions& options) {
  if (settlements.empty()) throw ParameterError("ranking needs at least one settlement");
  if (options.radius_km && !(*options.radius_km >= 0.0)) throw ParameterError("radius_km must be >= 0");

  SettlementRanking out;
  out.params = options;
  out.total_centroids = centroids.size();
  const std::vector<std::size_t> counts =
      options.strategy == RankStrategy::nearest_assignment
          ? count_nearest(centroids, settlements, options.radius_km, out.unassigned)
          : count_kmeans(centroids, settlements, options.seed);

  out.rows.reserve(settlements.size());
  for (std::size_t s = 0; s < settlements.size(); ++s) out.rows.push_back({settlements[s], counts[s]});
  std::sort(out.rows.begin(), out.rows.end(), [](const RankingRow& a, const RankingRow& b) {
    if (a.centroid_count != b.centroid_count) return a.centroid_count > b.centroid_count;
    return settlement_less(a.settlement, b.settlement);
  });
  return out;
}

std::string wkt_point(double lat, double lon) { return "POINT (" + format_double(lon) + " " + format_double(lat) + ")"; }

void write_ranking_csv(std::ostream& out, const SettlementRanking& ranking) {
  out << "geometry,name,type,count\n";
  for (const RankingRow& row : ranking.rows) {
    out << wkt_point(row.settlement.lat, row.settlement.lon) << ',' << csv_escape(row.settlement.name) << ','
        << csv_escape(row.settlement.kind) << ',' << row.centroid_count << '\n';
  }
}

nlohmann::json ranking_to_json(const SettlementRanking& ranking) {
  auto rows = nlohmann::json::array();
  for (const RankingRow& row : ranking.rows) {
    rows.push_back({{"geometry", wkt_point(row.settlement.lat, row.settlement.lon)},
                    {"name", row.settlement.name},
                    {"type", row.settlement.kind},
                    {"count", row.centroid_count}});
  }
  nlohmann::json params{{"strategy", to_string(ranking.params.strategy)},
                        {"radius_km", nullptr},
                        {"seed", ranking.params.seed}};
  if (ranking.params.radius_km) params["radius_km"] = *ranking.params.radius_km;
  return {{"rows", std::move(rows)},
          {"params", std::move(params)},
          {"total_centroids", ranking.total_centroids},
          {"unassigned", ranking.unassigned}};
}

}  // namespace loci
