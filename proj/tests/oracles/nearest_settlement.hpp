#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <tuple>
#include <vector>

namespace oracle {

struct Place {
  double lat;
  double lon;
  std::string name;
  std::string kind;
};

// Chord length between unit-sphere points. It grows strictly with the
// great-circle angle, so it ranks neighbors the same way haversine does.
inline double chord(double lat1, double lon1, double lat2, double lon2) {
  const double r = std::acos(-1.0) / 180.0;
  auto xyz = [r](double lat, double lon) {
    return std::tuple{std::cos(lat * r) * std::cos(lon * r), std::cos(lat * r) * std::sin(lon * r), std::sin(lat * r)};
  };
  const auto [x1, y1, z1] = xyz(lat1, lon1);
  const auto [x2, y2, z2] = xyz(lat2, lon2);
  return std::sqrt((x1 - x2) * (x1 - x2) + (y1 - y2) * (y1 - y2) + (z1 - z2) * (z1 - z2));
}

// Index of the nearest place; ties by name, then lon, then lat.
inline std::size_t nearest_place(double lat, double lon, const std::vector<Place>& places) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < places.size(); ++i) {
    const double di = chord(lat, lon, places[i].lat, places[i].lon);
    const double db = chord(lat, lon, places[best].lat, places[best].lon);
    if (di < db || (di == db && std::tie(places[i].name, places[i].lon, places[i].lat) <
                                    std::tie(places[best].name, places[best].lon, places[best].lat))) {
      best = i;
    }
  }
  return best;
}

// Centroid count per place under nearest assignment.
inline std::vector<std::size_t> nearest_counts(const std::vector<std::pair<double, double>>& centroids,
                                               const std::vector<Place>& places) {
  std::vector<std::size_t> counts(places.size(), 0);
  for (const auto& [lat, lon] : centroids) ++counts[nearest_place(lat, lon, places)];
  return counts;
}

}  // namespace oracle
