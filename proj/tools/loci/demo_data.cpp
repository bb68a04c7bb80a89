// Writes a small synthetic data directory usable by `loci serve` and the CLI:
//
//   <out>/tracks/etosha/<id>.csv    elephants dwelling near a few settlements
//   <out>/tracks/kruger/<id>.csv    one elephant with native temperatures
//   <out>/stations/                 fixture weather stations with hourly series
//   <out>/settlements.geojson       Etosha-area settlements

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "loci/settlement.hpp"
#include "loci/station.hpp"
#include "loci/time.hpp"
#include "loci/track.hpp"

namespace {

namespace fs = std::filesystem;
using namespace std::chrono_literals;

struct Site {
  double lat;
  double lon;
  int visits;
};

const std::vector<loci::Settlement> kEtoshaSettlements = {
    {-19.0356338, 16.4710969, "Halali", "village"},    {-17.6750468, 15.295068, "Ogongo", "village"},
    {-17.3940925, 14.5680119, "Omahenene", "village"}, {-17.9842151, 16.0210914, "Olukonda", "hamlet"},
    {-19.8967052, 14.3015546, "", "hamlet"},           {-17.2211624, 15.9146617, "Okawe", "village"},
    {-18.7978984, 14.4043373, "", "village"},          {-18.6311834, 14.1598649, "Otjitundua", "village"},
    {-20.37384, 14.960421, "Khorixas", "town"},        {-17.6549121, 17.4722164, "Omupini", "hamlet"},
};

double diurnal(loci::Timestamp t, double mean, double amplitude) {
  const auto secs = t.time_since_epoch().count();
  const double hour = static_cast<double>(((secs % 86400) + 86400) % 86400) / 3600.0;
  return mean + amplitude * std::sin((hour - 9.0) / 24.0 * 2.0 * std::acos(-1.0));
}

// Alternates dwelling with transits. Repeat visits to a site use distinct
// spots on a small ring around it.
loci::Track synth_track(const std::string& id, const std::vector<Site>& sites, loci::Timestamp start,
                        std::chrono::seconds step, bool native_temp, std::mt19937_64& rng) {
  std::normal_distribution<double> dwell(0.0, 0.004);
  std::normal_distribution<double> noise(0.0, 0.6);
  std::vector<loci::TrackPoint> points;
  loci::Timestamp t = start;
  const Site* previous = nullptr;
  for (const Site& site : sites) {
    for (int v = 0; v < site.visits; ++v) {
      if (previous != nullptr) {
        for (int i = 1; i < 12; ++i) {
          const double f = i / 12.0;
          points.push_back({t, previous->lat + f * (site.lat - previous->lat) + dwell(rng),
                            previous->lon + f * (site.lon - previous->lon) + dwell(rng), std::nullopt, id,
                            loci::TempSource::none});
          t += step;
        }
      }
      const double angle = 2.0 * std::acos(-1.0) * v / site.visits;
      const double lat = site.lat + (site.visits > 1 ? 0.06 * std::sin(angle) : 0.0);
      const double lon = site.lon + (site.visits > 1 ? 0.06 * std::cos(angle) : 0.0);
      for (int i = 0; i < 48; ++i) {
        points.push_back({t, lat + dwell(rng), lon + dwell(rng), std::nullopt, id, loci::TempSource::none});
        t += step;
      }
      previous = &site;
    }
  }
  if (native_temp) {
    for (auto& p : points) {
      p.temperature = std::round((diurnal(p.timestamp, 31.0, 7.0) + noise(rng)) * 10.0) / 10.0;
      p.temp_source = loci::TempSource::native;
    }
  }
  return loci::make_track(id, std::move(points));
}

void write_track(const fs::path& dir, const loci::Track& track) {
  fs::create_directories(dir);
  std::ofstream out(dir / (track.individual_id + ".csv"));
  loci::write_track_csv(out, track);
}

void write_station(const fs::path& dir, const std::string& id, loci::Timestamp begin, loci::Timestamp end,
                   double mean, std::mt19937_64& rng) {
  std::normal_distribution<double> noise(0.0, 0.4);
  std::ofstream out(dir / (id + ".csv"));
  out << "timestamp,temp_c\n";
  for (loci::Timestamp t = begin; t <= end; t += 1h) {
    const double c = std::round((diurnal(t, mean, 8.0) + noise(rng)) * 10.0) / 10.0;
    out << loci::format_timestamp(t) << ',' << c << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate a synthetic loci data directory"};
  std::string out_dir = "demo-data";
  std::uint64_t seed = 7;
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--seed", seed, "Random seed");
  CLI11_PARSE(app, argc, argv);

  std::mt19937_64 rng(seed);
  const fs::path root(out_dir);
  const auto start = *loci::parse_timestamp("2009-06-01T00:00:00Z");
  const auto& s = kEtoshaSettlements;

  const auto ag1 = synth_track("AG901", {{s[0].lat, s[0].lon, 5}, {s[3].lat, s[3].lon, 2}, {s[1].lat, s[1].lon, 2}},
                               start, 15min, false, rng);
  const auto ag2 = synth_track("AG902", {{s[0].lat, s[0].lon, 4}, {s[2].lat, s[2].lon, 2}, {s[8].lat, s[8].lon, 1}},
                               start + 7min, 20min, false, rng);
  write_track(root / "tracks" / "etosha", ag1);
  write_track(root / "tracks" / "etosha", ag2);

  const auto km = synth_track("AM905", {{-24.99, 31.59, 3}, {-25.11, 31.75, 3}, {-24.87, 31.47, 2}},
                              *loci::parse_timestamp("2008-01-01T00:00:00Z"), 30min, true, rng);
  write_track(root / "tracks" / "kruger", km);

  const fs::path stations = root / "stations";
  fs::create_directories(stations);
  {
    std::ofstream meta(stations / "stations.csv");
    meta << "id,name,lat,lon\n"
         << "68110,Okaukuejo,-19.15,15.9167\n"
         << "68112,Ondangwa,-17.8786,15.9525\n"
         << "68296,Skukuza,-24.9833,31.6\n";
  }
  write_station(stations, "68110", start - 24h, start + 24h * 40, 24.0, rng);
  write_station(stations, "68112", start - 24h, start + 24h * 40, 23.0, rng);
  write_station(stations, "68296", *loci::parse_timestamp("2007-12-31T00:00:00Z"),
                *loci::parse_timestamp("2008-02-15T00:00:00Z"), 22.0, rng);

  std::ofstream geo(root / "settlements.geojson");
  geo << loci::settlements_to_geojson(kEtoshaSettlements).dump(2) << '\n';

  std::cout << "wrote " << root.string() << '\n';
  return 0;
}
