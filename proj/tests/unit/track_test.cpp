#include <gtest/gtest.h>

#include <sstream>

#include "generators.hpp"
#include "loci/errors.hpp"
#include "loci/track.hpp"

namespace {

using testsupport::ts;

const char* kMovebank =
    "event-id,timestamp,location-long,location-lat,external-temperature,individual-local-identifier\n"
    "1,2009-01-01 00:30:00.000,31.5,-24.0,28.5,AM105\n"
    "2,2009-01-01 00:00:00.000,31.6,-24.1,,AM105\n"
    "3,2009-01-01 00:00:00.000,31.7,-24.2,30,AM99\n"
    "4,not a time,31.7,-24.2,30,AM99\n"
    "5,2009-01-01 01:00:00.000,31.7,-124.2,30,AM99\n"
    "6,2009-01-01 01:00:00.000,31.7,-24.2,30,\n";

TEST(ParseTracks, GroupsSortsAndRejects) {
  std::istringstream in(kMovebank);
  const auto r = loci::parse_tracks(in);
  ASSERT_EQ(r.tracks.size(), 2u);
  EXPECT_EQ(r.tracks[0].individual_id, "AM105");
  EXPECT_EQ(r.tracks[1].individual_id, "AM99");
  const auto& am105 = r.tracks[0];
  ASSERT_EQ(am105.points.size(), 2u);
  EXPECT_EQ(am105.points[0].timestamp, ts("2009-01-01T00:00:00Z"));
  EXPECT_FALSE(am105.points[0].temperature.has_value());
  EXPECT_EQ(am105.points[1].temperature, 28.5);
  EXPECT_EQ(am105.points[1].temp_source, loci::TempSource::native);
  EXPECT_EQ(am105.sampling_interval_median, loci::Duration{std::chrono::minutes{30}});
  EXPECT_EQ(r.rejections.count, 3u);
  EXPECT_EQ(r.rejections.first_lines, (std::vector<std::size_t>{5, 6, 7}));
}

TEST(ParseTracks, HeaderOnlyIsEmptyNotAnError) {
  std::istringstream in("timestamp,location-lat,location-long,individual-local-identifier\n");
  EXPECT_TRUE(loci::parse_tracks(in).tracks.empty());
}

TEST(ParseTracks, AllRowsInvalidThrows) {
  std::istringstream in("timestamp,location-lat,location-long,individual-local-identifier\nx,1,2,a\n");
  EXPECT_THROW(loci::parse_tracks(in), loci::EmptyInputError);
}

TEST(ParseTracks, MissingColumnThrowsSchemaError) {
  std::istringstream in("timestamp,location-lat,individual-local-identifier\n2009-01-01,1,a\n");
  EXPECT_THROW(loci::parse_tracks(in), loci::SchemaError);
}

TEST(ParseTracks, CustomSchemaAndDedup) {
  std::istringstream in("time,y,x,tag\n2009-01-01T00:00:00Z,1,2,a\n2009-01-01T00:00:00Z,1.5,2,a\n");
  const auto schema = loci::SchemaMap::parse("timestamp=time,lat=y,lon=x,id=tag");
  const auto r = loci::parse_tracks(in, schema, loci::ParseOptions{true});
  ASSERT_EQ(r.tracks.size(), 1u);
  EXPECT_EQ(r.tracks[0].points.size(), 1u);
  EXPECT_EQ(r.tracks[0].points[0].lat, 1.0);
  EXPECT_EQ(r.duplicates_dropped, 1u);
  EXPECT_THROW(loci::SchemaMap::parse("bogus=x"), loci::ParameterError);
  EXPECT_FALSE(loci::SchemaMap::parse("temperature=").temperature.has_value());
}

TEST(ParseTracks, RejectionListIsCapped) {
  std::string csv = "timestamp,location-lat,location-long,individual-local-identifier\n2009-01-01,1,2,a\n";
  for (int i = 0; i < 25; ++i) csv += "bad,1,2,a\n";
  std::istringstream in(csv);
  const auto r = loci::parse_tracks(in);
  EXPECT_EQ(r.rejections.count, 25u);
  EXPECT_EQ(r.rejections.first_lines.size(), loci::RejectionReport::kMaxListed);
}

TEST(Track, CanonicalRoundTrip) {
  std::istringstream in(kMovebank);
  const auto parsed = loci::parse_tracks(in);
  std::ostringstream out;
  loci::write_tracks_csv(out, parsed.tracks);
  std::istringstream back(out.str());
  const auto again = loci::parse_tracks(back, loci::SchemaMap::canonical());
  ASSERT_EQ(again.tracks.size(), parsed.tracks.size());
  for (std::size_t i = 0; i < again.tracks.size(); ++i) {
    EXPECT_EQ(again.tracks[i].points, parsed.tracks[i].points);
  }
}

TEST(Track, StationColumnsRoundTrip) {
  auto t = testsupport::uniform_track("e1", ts("2009-01-01T00:00:00Z"), std::chrono::minutes{30}, 3);
  t.points[1].temperature = 21.5;
  t.points[1].temp_source = loci::TempSource::station_fuzzy;
  t.station_id = "68110";
  std::ostringstream out;
  loci::write_track_csv(out, t);
  EXPECT_NE(out.str().find("temp_source,station_id"), std::string::npos);
  std::istringstream back(out.str());
  const auto r = loci::parse_tracks(back, loci::SchemaMap::canonical());
  ASSERT_EQ(r.tracks.size(), 1u);
  EXPECT_EQ(r.tracks[0].station_id, "68110");
  EXPECT_EQ(r.tracks[0].points, t.points);
}

TEST(Track, MedianIntervalSortAndPick) {
  std::vector<loci::TrackPoint> pts;
  for (int s : {0, 60, 180, 480, 1080}) pts.push_back({ts("2009-01-01T00:00:00Z") + std::chrono::seconds{s}});
  // Gaps 60, 120, 300, 600: even count averages the middle pair.
  EXPECT_EQ(loci::median_interval(pts), loci::Duration{210000});
  pts.pop_back();
  EXPECT_EQ(loci::median_interval(pts), loci::Duration{120000});
  EXPECT_FALSE(loci::median_interval(std::span(pts).first(1)).has_value());
}

TEST(Track, MedianCoordinate) {
  loci::Track t;
  EXPECT_THROW(loci::median_coordinate(t), loci::DomainError);
  t = testsupport::uniform_track("a", ts("2009-01-01T00:00:00Z"), std::chrono::minutes{1}, 3, 10.0, 20.0);
  const auto m = loci::median_coordinate(t);
  EXPECT_DOUBLE_EQ(m.lat, 10.0001);
  EXPECT_DOUBLE_EQ(m.lon, 20.0001);
}

}  // namespace
