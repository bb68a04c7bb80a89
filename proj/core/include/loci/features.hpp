#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "loci/matrix.hpp"
#include "loci/track.hpp"

namespace loci {

/// The two clustering feature spaces: location only, or location plus
/// temperature.
enum class FeatureSpace { without_temp, temp_influenced };

std::string_view to_string(FeatureSpace space);
std::optional<FeatureSpace> feature_space_from_string(std::string_view text);

/// Raw (unscaled) features aligned with the track points they came from.
/// Column order is lat, lon[, temperature].
struct FeatureMatrix {
  Matrix values;
  FeatureSpace space = FeatureSpace::without_temp;
  /// point_index[r] is the index into Track::points of row r.
  std::vector<std::size_t> point_index;
  /// Points dropped for lacking a temperature.
  std::size_t excluded = 0;
};

/// Projects a track onto a feature space. Under temp_influenced, points
/// without temperature are excluded and counted; if none remain, throws
/// EmptyFeatureError.
FeatureMatrix build_features(const Track& track, FeatureSpace space);

/// Standardized features plus the per-column transform that produced them.
struct ScaledMatrix {
  Matrix values;
  std::vector<double> means;
  /// Population standard deviations. 0 marks a constant column (scaled to 0).
  std::vector<double> stds;

  /// Maps a scaled row back to raw units.
  std::vector<double> inverse(std::span<const double> scaled_row) const;
};

struct ScaleOptions {
  /// Columns copied through unscaled (recorded as mean 0, std 1). Used to
  /// keep temperature in raw degrees when requested.
  std::vector<std::size_t> passthrough_columns;
};

/// Per-column z-score with the population (1/n) standard deviation.
ScaledMatrix standard_scale(const Matrix& raw, const ScaleOptions& options = {});

}  // namespace loci
