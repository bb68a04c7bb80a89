#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include <nlohmann/json.hpp>
#include <sys/wait.h>

#include "data_dir.hpp"
#include "generators.hpp"
#include "loci/cli.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation loci_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = loci::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override { testsupport::build_data_dir(dir.path()); }
  fs::path p(const std::string& rel) const { return dir.path() / rel; }
  testsupport::TempDir dir;
};

TEST_F(Cli, IngestWritesTracksAndRejections) {
  testsupport::write_text(p("raw.csv"),
                          "event-id,timestamp,location-long,location-lat,individual-local-identifier\n"
                          "1,2009-01-01 00:00:00.000,16.4,-19.0,AG189\n"
                          "2,2009-01-01 00:30:00.000,16.41,-19.01,AG189\n"
                          "3,2009-01-01 00:00:00.000,15.0,-17.0,AG191\n"
                          "4,oops,15.0,-17.0,AG191\n");
  const auto r = loci_cli({"ingest", "--input", p("raw.csv").string(), "--out-dir", p("out").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(p("out/AG189.csv")));
  EXPECT_TRUE(fs::exists(p("out/AG191.csv")));
  const auto report = json::parse(testsupport::read_text(p("out/rejections.json")));
  EXPECT_EQ(report["rejections"]["count"], 1);
  EXPECT_EQ(report["rejections"]["first_lines"][0], 5);
}

TEST_F(Cli, IngestCustomSchemaAndErrors) {
  testsupport::write_text(p("raw.csv"), "t,y,x,tag\n2009-01-01T00:00:00Z,-19,16,a\n");
  auto r = loci_cli({"ingest", "--input", p("raw.csv").string(), "--schema", "timestamp=t,lat=y,lon=x,id=tag",
                     "--out-dir", p("out").string()});
  EXPECT_EQ(r.code, 0) << r.err;
  r = loci_cli({"ingest", "--input", p("raw.csv").string(), "--out-dir", p("out").string()});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("data error"), std::string::npos);
  r = loci_cli({"ingest", "--input", p("missing.csv").string()});
  EXPECT_EQ(r.code, 3);
  r = loci_cli({"ingest", "--input", p("raw.csv").string(), "--schema", "colour=x"});
  EXPECT_EQ(r.code, 2);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(loci_cli({}).code, 2);
  EXPECT_EQ(loci_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(loci_cli({"--help"}).code, 0);
  const auto track = p("tracks/etosha/E1.csv").string();
  auto r = loci_cli({"cluster", "--track", track, "--eps", "0", "--min-pts", "5"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--eps"), std::string::npos);
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
  r = loci_cli({"cluster", "--track", track, "--eps", "0.1", "--min-pts", "0"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--min-pts"), std::string::npos);
  EXPECT_EQ(loci_cli({"cluster", "--track", track, "--eps", "0.1", "--min-pts", "5", "--features", "lat"}).code, 2);
  EXPECT_EQ(loci_cli({"enrich", "--track", track}).code, 2);
  EXPECT_EQ(loci_cli({"enrich", "--track", track, "--provider", "carrier"}).code, 2);
}

TEST_F(Cli, ClusterWritesLabelsAndCentroids) {
  const auto r = loci_cli({"cluster", "--track", p("tracks/etosha/E1.csv").string(), "--eps", "0.1", "--min-pts",
                           "20", "--labels-out", p("out/e1.csv").string(), "--centroids-out",
                           p("out/e1.geojson").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto summary = json::parse(r.out);
  EXPECT_GT(summary["clusters"].get<int>(), 0);
  const auto c = json::parse(testsupport::read_text(p("out/e1.geojson")));
  EXPECT_EQ(c["features"].size(), summary["clusters"].get<std::size_t>());
  EXPECT_EQ(c["features"][0]["properties"]["dataset_id"], "etosha");
  EXPECT_EQ(testsupport::read_text(p("out/e1.csv")).rfind("point_index,lat,lon,temperature,label\n", 0), 0u);
}

TEST_F(Cli, ClusterPresets) {
  const std::string track = p("tracks/kruger/K1.csv").string();
  auto r = loci_cli({"cluster", "--track", track, "--preset", "temp-influenced", "--labels-out", p("l.csv").string(),
                     "--centroids-out", p("c.geojson").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["feature_space"], "temp_influenced");

  r = loci_cli({"cluster", "--track", track, "--preset", "without-temp", "--eps", "0", "--labels-out",
                p("l.csv").string(), "--centroids-out", p("c.geojson").string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--eps must be > 0"), std::string::npos);

  r = loci_cli({"cluster", "--track", track, "--preset", "nope"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--preset"), std::string::npos);
  EXPECT_EQ(loci_cli({"cluster", "--track", track, "--min-pts", "5"}).code, 2);
}

TEST_F(Cli, ClusterIsDeterministic) {
  for (const char* name : {"a.geojson", "b.geojson"}) {
    ASSERT_EQ(loci_cli({"cluster", "--track", p("tracks/kruger/K1.csv").string(), "--features", "lat,lon,temp",
                        "--eps", "0.5", "--min-pts", "5", "--labels-out", p("l.csv").string(), "--centroids-out",
                        p(name).string()})
                  .code,
              0);
  }
  EXPECT_EQ(testsupport::read_text(p("a.geojson")), testsupport::read_text(p("b.geojson")));
}

TEST_F(Cli, ClusterTempWithoutTemperatureIsDataError) {
  const auto r = loci_cli({"cluster", "--track", p("tracks/etosha/E1.csv").string(), "--features", "lat,lon,temp",
                           "--eps", "0.1", "--min-pts", "5", "--labels-out", p("l.csv").string(),
                           "--centroids-out", p("c.geojson").string()});
  EXPECT_EQ(r.code, 3);
}

TEST_F(Cli, EnrichFuzzyOnExactGridMatchesEverything) {
  const auto r = loci_cli({"enrich", "--track", p("tracks/etosha/E1.csv").string(), "--fuzzy", "--fixtures",
                           p("stations").string(), "--out", p("e1.enriched.csv").string(), "--report",
                           p("e1.join.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto report = json::parse(testsupport::read_text(p("e1.join.json")));
  EXPECT_EQ(report["matched_fraction"], 100.0);
  EXPECT_EQ(report["fuzzy"], true);
  EXPECT_EQ(report["station"]["station_id"], "68110");
  const auto c = loci_cli({"cluster", "--track", p("e1.enriched.csv").string(), "--features", "lat,lon,temp",
                           "--eps", "0.3", "--min-pts", "20", "--labels-out", p("l.csv").string(),
                           "--centroids-out", p("c.geojson").string()});
  EXPECT_EQ(c.code, 0) << c.err;
}

TEST_F(Cli, EnrichWithoutStationIsProviderError) {
  const auto r = loci_cli({"enrich", "--track", p("tracks/etosha/E1.csv").string(), "--fixtures",
                           p("stations").string(), "--radius-km", "1", "--out", p("x.csv").string(), "--report",
                           p("x.json").string()});
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.err.find("provider error"), std::string::npos);
}

TEST_F(Cli, RankCombinesCentroidFiles) {
  for (const char* id : {"E1", "E2"}) {
    ASSERT_EQ(loci_cli({"cluster", "--track", p(std::string("tracks/etosha/") + id + ".csv").string(), "--eps",
                        "0.1", "--min-pts", "20", "--labels-out", p("l.csv").string(), "--centroids-out",
                        p(std::string(id) + ".geojson").string()})
                  .code,
              0);
  }
  const auto r = loci_cli({"rank", "--centroids", p("E1.geojson").string(), p("E2.geojson").string(),
                           "--settlements", p("settlements.geojson").string(), "--out-json",
                           p("rank.json").string(), "--out-csv", p("rank.csv").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(testsupport::read_text(p("rank.json")));
  EXPECT_EQ(j["rows"][0]["name"], "Halali");
  const auto csv = testsupport::read_text(p("rank.csv"));
  EXPECT_EQ(csv.rfind("geometry,name,type,count\nPOINT (16.4710969 -19.0356338),Halali,village,", 0), 0u);
  EXPECT_EQ(loci_cli({"rank", "--centroids", p("E1.geojson").string(), "--settlements",
                      p("settlements.geojson").string(), "--strategy", "median"})
                .code,
            2);
}

TEST_F(Cli, ServeRejectsBadDataDir) {
  EXPECT_EQ(loci_cli({"serve", "--data-dir", p("nope").string()}).code, 2);
}

#ifdef LOCI_CLI_PATH
int run_binary(const std::string& args) {
  const int status = std::system((std::string(LOCI_CLI_PATH) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST_F(Cli, BinaryExitCodes) {
  const auto track = p("tracks/etosha/E1.csv").string();
  EXPECT_EQ(run_binary("--help"), 0);
  EXPECT_EQ(run_binary("cluster --track " + track + " --eps 0 --min-pts 3"), 2);
  EXPECT_EQ(run_binary("cluster --track " + p("none.csv").string() + " --eps 0.1 --min-pts 3"), 3);
  EXPECT_EQ(run_binary("cluster --track " + track + " --eps 0.1 --min-pts 20 --labels-out " + p("l.csv").string() +
                       " --centroids-out " + p("c.geojson").string()),
            0);
}
#endif

}  // namespace
