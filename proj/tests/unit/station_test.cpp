#include <gtest/gtest.h>

#include <sstream>
#include <thread>

#include "generators.hpp"
#include "loci/enrich.hpp"
#include "loci/errors.hpp"
#include "loci/station.hpp"

namespace {

using namespace std::chrono_literals;
using testsupport::ts;

std::vector<loci::RawSample> hourly(loci::Timestamp t0, int hours, double base = 20.0) {
  std::vector<loci::RawSample> out;
  for (int h = 0; h < hours; ++h) out.push_back({t0 + std::chrono::hours{h}, base + h % 5});
  return out;
}

class FixtureProviderTest : public ::testing::Test {
 protected:
  void SetUp() override {
    t0 = ts("2009-01-01T00:00:00Z");
    testsupport::write_fixture_dir(dir.path(), {
                                                   {"NEAR", "Near", -24.05, 31.5, hourly(t0, 72)},
                                                   {"FAR", "Far", -24.6, 31.5, hourly(t0, 72, 10)},
                                                   {"OLD", "Old", -24.0, 31.5, hourly(t0 - 24h * 400, 48)},
                                               });
  }
  testsupport::TempDir dir;
  loci::Timestamp t0;
};

TEST_F(FixtureProviderTest, NearbyFiltersByRadius) {
  loci::FixtureStationProvider p(dir.path());
  EXPECT_EQ(p.nearby({-24.0, 31.5}, 10.0).size(), 2u);
  EXPECT_EQ(p.nearby({-24.0, 31.5}, 100.0).size(), 3u);
}

TEST_F(FixtureProviderTest, FindStationSkipsStationsWithoutCoverage) {
  loci::FixtureStationProvider p(dir.path());
  const auto track = testsupport::uniform_track("a", t0 + 2h, 30min, 20, -24.0, 31.5);
  const auto s = loci::find_station(track, p);
  EXPECT_EQ(s.station_id, "NEAR");
  EXPECT_NEAR(s.distance_km, 5.58, 0.1);
  EXPECT_THROW(loci::find_station(track, p, loci::StationSearch{1.0}), loci::NoStationError);
}

TEST_F(FixtureProviderTest, NoStationMessageNamesRadius) {
  loci::FixtureStationProvider p(dir.path());
  const auto track = testsupport::uniform_track("a", t0, 30min, 5, 10.0, 10.0);
  try {
    loci::find_station(track, p, loci::StationSearch{25.0});
    FAIL();
  } catch (const loci::NoStationError& e) {
    EXPECT_NE(std::string(e.what()).find("25"), std::string::npos);
  }
}

TEST_F(FixtureProviderTest, HourlyWindow) {
  loci::FixtureStationProvider p(dir.path());
  const auto s = p.hourly("NEAR", t0 + 2h, t0 + 5h);
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(s.front().time, t0 + 2h);
  EXPECT_THROW(p.hourly("NOPE", t0, t0 + 1h), loci::ProviderError);
}

TEST_F(FixtureProviderTest, ConcurrentReadsAgree) {
  loci::FixtureStationProvider p(dir.path());
  std::vector<std::thread> threads;
  std::vector<std::size_t> sizes(8);
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    threads.emplace_back([&, i] { sizes[i] = p.hourly("NEAR", t0, t0 + 71h).size(); });
  }
  for (auto& t : threads) t.join();
  for (auto n : sizes) EXPECT_EQ(n, 72u);
}

TEST_F(FixtureProviderTest, CachingProviderCountsHits) {
  auto inner = std::make_shared<loci::FixtureStationProvider>(dir.path());
  loci::CachingStationProvider cached(inner);
  const auto a = cached.hourly("NEAR", t0, t0 + 10h);
  const auto b = cached.hourly("NEAR", t0, t0 + 10h);
  EXPECT_EQ(a, b);
  EXPECT_EQ(cached.hits(), 1u);
  EXPECT_EQ(cached.misses(), 1u);
}

TEST_F(FixtureProviderTest, EnrichExactGridTrackFullyMatched) {
  loci::FixtureStationProvider p(dir.path());
  const auto track = testsupport::uniform_track("a", t0 + 3h, 1h, 24, -24.0, 31.5);
  loci::EnrichOptions opts;
  opts.fuzzy = true;
  const auto r = loci::enrich_track(track, p, opts);
  EXPECT_EQ(r.report.matched_fraction, 100.0);
  EXPECT_EQ(r.station.station_id, "NEAR");
  EXPECT_EQ(r.track.station_id, "NEAR");
  EXPECT_EQ(r.track.points[0].temp_source, loci::TempSource::station_exact);
}

TEST_F(FixtureProviderTest, EnrichOffGridTrackExactVersusFuzzy) {
  loci::FixtureStationProvider p(dir.path());
  const auto track = testsupport::uniform_track("a", t0 + 3h + 10min, 1h, 10, -24.0, 31.5);
  loci::EnrichOptions opts;
  opts.grid_interval = 1h;
  EXPECT_EQ(loci::enrich_track(track, p, opts).report.matched_fraction, 0.0);
  opts.fuzzy = true;
  EXPECT_EQ(loci::enrich_track(track, p, opts).report.matched_fraction, 100.0);
}

TEST(FixtureProvider, MissingDirectoryIsProviderError) {
  EXPECT_THROW(loci::FixtureStationProvider("/nonexistent/loci"), loci::ProviderError);
}

TEST(StationInfo, Coverage) {
  loci::StationInfo s;
  EXPECT_TRUE(s.covers(ts("2000-01-01"), ts("2001-01-01")));
  s.coverage_start = ts("2005-01-01");
  s.coverage_end = ts("2006-01-01");
  EXPECT_TRUE(s.covers(ts("2004-06-01"), ts("2005-06-01")));
  EXPECT_FALSE(s.covers(ts("2006-06-01"), ts("2007-01-01")));
}

}  // namespace
