#include "loci/join.hpp"

#include <algorithm>
#include <vector>

#include "loci/errors.hpp"

namespace loci {

nlohmann::json to_json(const JoinReport& r) {
  nlohmann::json j{{"matched_fraction", r.matched_fraction},
                   {"matched", r.matched},
                   {"total", r.total},
                   {"fit_pairs", r.fit_pairs},
                   {"tolerance_seconds", static_cast<double>(r.tolerance.count()) / 1000.0},
                   {"fuzzy", r.fuzzy},
                   {"station_id", r.station_id},
                   {"r_squared_zero_centered", nullptr},
                   {"offset_study_minus_station", nullptr}};
  if (r.r_squared_zero_centered) j["r_squared_zero_centered"] = *r.r_squared_zero_centered;
  if (r.offset_study_minus_station) j["offset_study_minus_station"] = *r.offset_study_minus_station;
  return j;
}

Duration fuzzy_tolerance(const Track& track) {
  const auto median = median_interval(track.points);
  if (!median) throw DomainError("fuzzy tolerance needs at least two fixes");
  return *median / 2;
}

JoinResult join_temperature(const Track& track, const StationSeries& series, Duration tolerance) {
  if (tolerance.count() < 0) throw ParameterError("join tolerance must be >= 0");

  JoinResult out;
  out.track = track;
  out.track.station_id = series.station_id;
  JoinReport& report = out.report;
  report.total = track.points.size();
  report.tolerance = tolerance;
  report.fuzzy = tolerance.count() > 0;
  report.station_id = series.station_id;

  const auto& samples = series.samples;
  std::vector<double> study, station;

  for (std::size_t i = 0; i < out.track.points.size(); ++i) {
    TrackPoint& p = out.track.points[i];
    const std::optional<double> native = track.points[i].temperature;
    p.temperature.reset();
    p.temp_source = TempSource::none;
    if (samples.empty()) continue;

    const auto after = std::lower_bound(samples.begin(), samples.end(), p.timestamp,
                                        [](const SeriesSample& s, Timestamp t) { return s.time < t; });
    const SeriesSample* best = nullptr;
    Duration best_dt = Duration::max();
    if (after != samples.begin()) {
      const auto& before = *std::prev(after);
      best = &before;
      best_dt = std::chrono::duration_cast<Duration>(p.timestamp - before.time);
    }
    if (after != samples.end()) {
      const Duration dt = std::chrono::duration_cast<Duration>(after->time - p.timestamp);
      if (dt < best_dt) {
        best = &*after;
        best_dt = dt;
      }
    }
    if (best == nullptr || best_dt > tolerance) continue;

    p.temperature = best->temperature_c;
    p.temp_source = best_dt.count() == 0 ? TempSource::station_exact : TempSource::station_fuzzy;
    ++report.matched;
    if (native) {
      study.push_back(*native);
      station.push_back(best->temperature_c);
    }
  }

  report.matched_fraction =
      report.total == 0 ? 0.0 : 100.0 * static_cast<double>(report.matched) / static_cast<double>(report.total);
  report.fit_pairs = study.size();
  if (study.size() >= 2) {
    try {
      const Fit fit = compute_fit(study, station);
      report.r_squared_zero_centered = fit.r_squared_zero_centered;
      report.offset_study_minus_station = fit.offset;
    } catch (const DomainError&) {
      // Constant study temperatures: fit is undefined, leave it absent.
    }
  }
  return out;
}

Fit compute_fit(std::span<const double> study, std::span<const double> station) {
  if (study.size() != station.size()) throw DomainError("fit series differ in length");
  const std::size_t n = study.size();
  if (n < 2) throw DomainError("fit needs at least two pairs");

  double study_mean = 0.0, station_mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    study_mean += study[i];
    station_mean += station[i];
  }
  study_mean /= static_cast<double>(n);
  station_mean /= static_cast<double>(n);

  double residual = 0.0, total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = study[i] - study_mean;
    const double t = station[i] - station_mean;
    residual += (s - t) * (s - t);
    total += s * s;
  }
  if (total == 0.0) throw DomainError("study temperatures have zero variance");
  return Fit{1.0 - residual / total, study_mean - station_mean};
}

}  // namespace loci
