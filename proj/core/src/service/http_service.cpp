#include "loci/service/http_service.hpp"

#include <httplib.h>

#include "loci/geojson.hpp"
#include "loci/ranking.hpp"

namespace loci::service {

using nlohmann::json;

std::size_t default_stride(std::size_t points, std::size_t target) {
  if (target == 0 || points <= target) return 1;
  return (points + target - 1) / target;
}

struct HttpService::Impl {
  std::shared_ptr<RunEngine> engine;
  std::shared_ptr<const DataCatalog> catalog;
  std::vector<Settlement> settlements;
  httplib::Server server;
};

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& code, const std::string& message) {
  send_json(res, status, json{{"error", {{"code", code}, {"message", message}}}});
}

/// Runs a handler and maps library exceptions onto HTTP errors.
template <typename Handler>
httplib::Server::Handler guarded(Handler handler) {
  return [handler](const httplib::Request& req, httplib::Response& res) {
    try {
      handler(req, res);
    } catch (const RequestError& e) {
      send_error(res, e.status(), e.code(), e.what());
    } catch (const json::exception& e) {
      send_error(res, 400, "invalid_json", e.what());
    } catch (const NoStationError& e) {
      send_error(res, 503, "no_station", e.what());
    } catch (const ProviderError& e) {
      send_error(res, 503, "provider_unavailable", e.what());
    } catch (const ParameterError& e) {
      send_error(res, 400, "invalid_request", e.what());
    } catch (const DataError& e) {
      send_error(res, 400, "data_error", e.what());
    } catch (const std::exception& e) {
      send_error(res, 500, "internal", e.what());
    }
  };
}

std::size_t parse_stride(const std::string& text) {
  std::size_t pos = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || value == 0) throw RequestError(400, "invalid_request", "decimate must be an integer >= 1");
  return static_cast<std::size_t>(value);
}

}  // namespace

HttpService::HttpService(std::shared_ptr<RunEngine> engine, std::shared_ptr<const DataCatalog> catalog,
                         std::vector<Settlement> settlements, std::string cors_origin)
    : impl_(std::make_unique<Impl>()) {
  impl_->engine = std::move(engine);
  impl_->catalog = std::move(catalog);
  impl_->settlements = std::move(settlements);
  Impl* self = impl_.get();
  auto& srv = impl_->server;

  srv.set_default_headers({{"Access-Control-Allow-Origin", cors_origin},
                           {"Access-Control-Allow-Headers", "Content-Type"},
                           {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  srv.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  srv.Get("/api/datasets", guarded([self](const httplib::Request&, httplib::Response& res) {
            send_json(res, 200, json{{"datasets", self->catalog->listing()}});
          }));

  srv.Get(R"(/api/tracks/([^/]+)/([^/]+))", guarded([self](const httplib::Request& req, httplib::Response& res) {
            const auto track = self->catalog->track(req.matches[1], req.matches[2]);
            const std::size_t stride =
                req.has_param("decimate") ? parse_stride(req.get_param_value("decimate"))
                                          : default_stride(track->points.size());
            send_json(res, 200, track_to_geojson(*track, stride));
          }));

  srv.Post("/api/runs", guarded([self](const httplib::Request& req, httplib::Response& res) {
             const RunRequest request = run_request_from_json(json::parse(req.body));
             const auto outcome = self->engine->run(request);
             json body = to_json(*outcome.result);
             body["cached"] = outcome.cached;
             body["timing_ms"] = outcome.result->elapsed_ms;
             send_json(res, 200, body);
           }));

  auto find_run = [self](const std::string& id) {
    auto run = self->engine->find(id);
    if (!run) throw RequestError(404, "not_found", "unknown run '" + id + "'");
    return run;
  };

  srv.Get(R"(/api/runs/([^/]+)/clusters)", guarded([find_run](const httplib::Request& req, httplib::Response& res) {
            const auto run = find_run(req.matches[1]);
            send_json(res, 200, labeling_to_geojson(run->track, run->labeling, run->point_index));
          }));

  srv.Get(R"(/api/runs/([^/]+)/centroids)", guarded([find_run](const httplib::Request& req, httplib::Response& res) {
            send_json(res, 200, centroids_to_geojson(find_run(req.matches[1])->centroids));
          }));

  srv.Get("/api/settlements", guarded([self](const httplib::Request&, httplib::Response& res) {
            send_json(res, 200, settlements_to_geojson(self->settlements));
          }));

  srv.Post("/api/rankings", guarded([self, find_run](const httplib::Request& req, httplib::Response& res) {
             const json body = json::parse(req.body);
             if (!body.is_object() || !body.contains("run_ids") || !body["run_ids"].is_array() ||
                 body["run_ids"].empty()) {
               throw RequestError(400, "invalid_request", "run_ids must be a non-empty array");
             }
             if (self->settlements.empty()) throw RequestError(400, "invalid_request", "no settlements loaded");
             RankOptions opts;
             if (body.contains("strategy")) {
               const auto s = rank_strategy_from_string(body["strategy"].get<std::string>());
               if (!s) throw RequestError(400, "invalid_request", "strategy must be 'nearest' or 'kmeans'");
               opts.strategy = *s;
             }
             if (body.contains("radius_km") && !body["radius_km"].is_null()) {
               opts.radius_km = body["radius_km"].get<double>();
             }
             if (body.contains("seed")) opts.seed = body["seed"].get<std::uint64_t>();
             std::vector<Centroid> centroids;
             for (const auto& id : body["run_ids"]) {
               const auto run = find_run(id.get<std::string>());
               centroids.insert(centroids.end(), run->centroids.begin(), run->centroids.end());
             }
             send_json(res, 200, ranking_to_json(rank_settlements(centroids, self->settlements, opts)));
           }));
}

HttpService::~HttpService() { stop(); }

int HttpService::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpService::listen() { return impl_->server.listen_after_bind(); }

void HttpService::stop() {
  if (impl_) impl_->server.stop();
}

void HttpService::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace loci::service
