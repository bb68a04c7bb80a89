#pragma once

#include <memory>
#include <string>
#include <vector>

#include "loci/service/config.hpp"
#include "loci/service/run.hpp"
#include "loci/settlement.hpp"

namespace loci::service {

/// JSON HTTP API over a RunEngine:
///
///   GET  /api/datasets
///   GET  /api/tracks/{dataset}/{individual}?decimate=N
///   POST /api/runs
///   GET  /api/runs/{run_id}/clusters
///   GET  /api/runs/{run_id}/centroids
///   GET  /api/settlements
///   POST /api/rankings
///
/// Errors answer with {"error": {"code": ..., "message": ...}}.
class HttpService {
 public:
  HttpService(std::shared_ptr<RunEngine> engine, std::shared_ptr<const DataCatalog> catalog,
              std::vector<Settlement> settlements, std::string cors_origin = "*");
  ~HttpService();

  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  /// Binds to `port` (0 picks a free port). Returns the bound port or -1.
  int bind(const std::string& host, int port);

  /// Serves until stop(). Requires a successful bind().
  bool listen();

  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Default decimation stride: keeps at most `target` points.
std::size_t default_stride(std::size_t points, std::size_t target = 20'000);

}  // namespace loci::service
