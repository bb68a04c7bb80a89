#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

namespace oracle {

// Median of consecutive differences by sorting and picking the middle (mean of
// the middle pair for even counts). Times and result in seconds.
inline double median_gap(const std::vector<std::int64_t>& times) {
  std::vector<double> gaps;
  for (std::size_t i = 1; i < times.size(); ++i) gaps.push_back(static_cast<double>(times[i] - times[i - 1]));
  std::sort(gaps.begin(), gaps.end());
  const std::size_t m = gaps.size() / 2;
  return gaps.size() % 2 == 1 ? gaps[m] : (gaps[m - 1] + gaps[m]) / 2.0;
}

// Straight-line value between (t0, v0) and (t1, v1) at t.
inline double lerp_at(std::int64_t t0, double v0, std::int64_t t1, double v1, std::int64_t t) {
  return v0 + (v1 - v0) * static_cast<double>(t - t0) / static_cast<double>(t1 - t0);
}

// Index of the nearest sample within tolerance (seconds), scanning every
// sample; equal distances keep the earlier one.
inline std::optional<std::size_t> nearest_within(const std::vector<std::int64_t>& sample_times, std::int64_t t,
                                                 double tolerance_s) {
  std::optional<std::size_t> best;
  double best_d = 0.0;
  for (std::size_t i = 0; i < sample_times.size(); ++i) {
    const double d = static_cast<double>(sample_times[i] > t ? sample_times[i] - t : t - sample_times[i]);
    if (d > tolerance_s) continue;
    if (!best || d < best_d) {
      best = i;
      best_d = d;
    }
  }
  return best;
}

}  // namespace oracle
