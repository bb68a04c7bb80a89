#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "generators.hpp"
#include "loci/errors.hpp"
#include "loci/meteostat_client.hpp"
#include "loci/time.hpp"

namespace {

using nlohmann::json;
using testsupport::ts;

// Minimal stand-in for the Meteostat API on an ephemeral local port.
class MockMeteostat : public ::testing::Test {
 protected:
  void SetUp() override {
    ::setenv("LOCI_TEST_METEOSTAT_KEY", "secret", 1);
    server.Get("/v1/stations/nearby", [this](const httplib::Request& req, httplib::Response& res) {
      last_key = req.get_header_value("x-rapidapi-key");
      nearby_calls++;
      res.set_content(json{{"data", {{{"id", "68262"}}, {{"id", "EMPTY"}}}}}.dump(), "application/json");
    });
    server.Get("/v1/stations/meta", [](const httplib::Request& req, httplib::Response& res) {
      const std::string id = req.get_param_value("id");
      json inv = id == "EMPTY" ? json{{"start", nullptr}, {"end", nullptr}}
                               : json{{"start", "2008-01-01"}, {"end", "2012-12-31"}};
      res.set_content(json{{"data",
                            {{"id", id},
                             {"name", {{"en", "Skukuza"}}},
                             {"location", {{"latitude", -24.98}, {"longitude", 31.6}}},
                             {"inventory", {{"hourly", inv}}}}}}
                          .dump(),
                      "application/json");
    });
    server.Get("/v1/stations/hourly", [this](const httplib::Request& req, httplib::Response& res) {
      if (fail_first > 0) {
        --fail_first;
        res.status = 503;
        return;
      }
      hourly_calls++;
      const auto start = *loci::parse_timestamp(req.get_param_value("start"));
      const auto end = *loci::parse_timestamp(req.get_param_value("end")) + std::chrono::hours{23};
      json rows = json::array();
      for (auto t = start; t <= end; t += std::chrono::hours{1}) {
        const std::string s = loci::format_timestamp(t);
        rows.push_back({{"time", s.substr(0, 10) + " " + s.substr(11, 8)}, {"temp", t == start ? json() : json(21.5)}});
      }
      res.set_content(json{{"data", rows}}.dump(), "application/json");
    });
    port = server.bind_to_any_port("127.0.0.1");
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }

  void TearDown() override {
    server.stop();
    thread.join();
  }

  loci::MeteostatConfig config() const {
    loci::MeteostatConfig c;
    c.base_url = "http://127.0.0.1:" + std::to_string(port) + "/v1/";
    c.api_key_env = "LOCI_TEST_METEOSTAT_KEY";
    c.backoff = std::chrono::milliseconds{1};
    c.timeout = std::chrono::milliseconds{2000};
    return c;
  }

  httplib::Server server;
  std::thread thread;
  int port = 0;
  std::atomic<int> nearby_calls{0};
  std::atomic<int> hourly_calls{0};
  std::atomic<int> fail_first{0};
  std::string last_key;
};

TEST_F(MockMeteostat, NearbyReadsMetaAndSkipsStationsWithoutHourlyData) {
  loci::MeteostatClient client(config());
  const auto list = client.nearby({-24.99, 31.59}, 50.0);
  ASSERT_EQ(list.size(), 1u);
  EXPECT_EQ(list[0].station_id, "68262");
  EXPECT_EQ(list[0].name, "Skukuza");
  EXPECT_DOUBLE_EQ(list[0].lat, -24.98);
  EXPECT_EQ(list[0].coverage_start, ts("2008-01-01"));
  EXPECT_EQ(last_key, "secret");
}

TEST_F(MockMeteostat, HourlyIsChunkedAndTrimmed) {
  loci::MeteostatClient client(config());
  const auto start = ts("2009-01-01T05:00:00Z");
  const auto end = ts("2009-02-14T12:00:00Z");
  const auto samples = client.hourly("68262", start, end);
  EXPECT_EQ(hourly_calls.load(), 2);
  ASSERT_FALSE(samples.empty());
  EXPECT_EQ(samples.front().time, start);
  EXPECT_EQ(samples.back().time, end);
  EXPECT_TRUE(std::is_sorted(samples.begin(), samples.end(),
                             [](const auto& a, const auto& b) { return a.time < b.time; }));
}

TEST_F(MockMeteostat, RetriesServerErrors) {
  fail_first = 2;
  loci::MeteostatClient client(config());
  EXPECT_FALSE(client.hourly("68262", ts("2009-01-01T01:00:00Z"), ts("2009-01-01T10:00:00Z")).empty());
  fail_first = 10;
  EXPECT_THROW(client.hourly("68262", ts("2009-01-01T01:00:00Z"), ts("2009-01-01T10:00:00Z")), loci::ProviderError);
}

TEST_F(MockMeteostat, MissingKeyIsProviderError) {
  auto c = config();
  c.api_key_env = "LOCI_TEST_UNSET_KEY_VARIABLE";
  loci::MeteostatClient client(c);
  EXPECT_THROW(client.nearby({0, 0}, 10), loci::ProviderError);
  EXPECT_EQ(nearby_calls.load(), 0);
}

TEST(Meteostat, UnreachableHostIsProviderError) {
  loci::MeteostatConfig c;
  c.base_url = "http://127.0.0.1:1";
  c.api_key_env.clear();
  c.max_retries = 1;
  c.backoff = std::chrono::milliseconds{1};
  loci::MeteostatClient client(c);
  EXPECT_THROW(client.nearby({0, 0}, 10), loci::ProviderError);
}

TEST(Meteostat, BaseUrlNeedsScheme) { EXPECT_THROW(loci::MeteostatClient(loci::MeteostatConfig{"localhost"}), loci::ParameterError); }

}  // namespace
