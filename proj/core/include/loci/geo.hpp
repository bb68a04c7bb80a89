#pragma once

#include <cmath>

namespace loci {

struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;
};

/// Mean Earth radius (IUGG).
inline constexpr double kEarthRadiusKm = 6371.0088;

/// Great-circle distance in kilometres.
double haversine_km(GeoPoint a, GeoPoint b);

inline bool valid_latitude(double lat) { return std::isfinite(lat) && lat >= -90.0 && lat <= 90.0; }
inline bool valid_longitude(double lon) { return std::isfinite(lon) && lon >= -180.0 && lon <= 180.0; }
inline bool valid_coordinate(GeoPoint p) { return valid_latitude(p.lat) && valid_longitude(p.lon); }

}  // namespace loci
