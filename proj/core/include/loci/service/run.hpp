#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "loci/centroids.hpp"
#include "loci/errors.hpp"
#include "loci/features.hpp"
#include "loci/join.hpp"
#include "loci/labeling.hpp"
#include "loci/service/lru_cache.hpp"
#include "loci/station.hpp"
#include "loci/track.hpp"

namespace loci::service {

/// Error carrying an HTTP status and a machine-readable code.
class RequestError : public Error {
 public:
  RequestError(int status, std::string code, const std::string& message)
      : Error(message), status_(status), code_(std::move(code)) {}

  int status() const { return status_; }
  const std::string& code() const { return code_; }

 private:
  int status_;
  std::string code_;
};

enum class Enrichment { native, station };

/// Parameters of one clustering run.
struct RunRequest {
  std::string dataset_id;
  std::string individual_id;
  FeatureSpace feature_space = FeatureSpace::without_temp;
  double epsilon = 0.0;
  int min_pts = 1;
  bool fuzzy = false;
  Enrichment enrichment = Enrichment::native;
  /// Keep every Nth fix (first and last always kept).
  std::optional<std::size_t> decimate;
};

/// Parses and validates field types and ranges. Throws RequestError (400).
RunRequest run_request_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunRequest& request);

/// Stable 16-hex-digit identifier derived from the canonical request JSON.
std::string run_id_for(const RunRequest& request);

struct RunSummary {
  int clusters = 0;
  std::size_t noise = 0;
  std::size_t points_used = 0;
  std::size_t excluded = 0;
  std::size_t track_points = 0;
};

struct RunResult {
  std::string run_id;
  RunRequest request;
  RunSummary summary;
  std::vector<Centroid> centroids;
  std::optional<JoinReport> join;
  double elapsed_ms = 0.0;

  /// Track the labels refer to (after enrichment and decimation).
  Track track;
  ClusterLabeling labeling;
  std::vector<std::size_t> point_index;
};

/// Everything except the timing, which is reported separately.
nlohmann::json to_json(const RunResult& result);

/// Read-only index of canonical track files under
/// `<root>/<dataset_id>/*.csv`. All tracks are loaded at construction.
class DataCatalog {
 public:
  explicit DataCatalog(const std::filesystem::path& root);

  /// Throws RequestError (404) for unknown ids.
  std::shared_ptr<const Track> track(const std::string& dataset_id, const std::string& individual_id) const;

  /// [{dataset_id, individuals: [{individual_id, points, has_temperature}]}]
  nlohmann::json listing() const;

  bool empty() const { return datasets_.empty(); }

 private:
  std::map<std::string, std::map<std::string, std::shared_ptr<const Track>>> datasets_;
};

struct EngineOptions {
  std::size_t point_ceiling = 200'000;
  std::size_t cache_capacity = 64;
};

/// Executes runs and caches results by run id.
class RunEngine {
 public:
  RunEngine(std::shared_ptr<const DataCatalog> catalog, std::shared_ptr<StationProvider> provider,
            EngineOptions options = {});

  struct Outcome {
    std::shared_ptr<const RunResult> result;
    bool cached = false;
  };

  /// Validates the request against the data and runs it, or serves it from
  /// the cache. Throws RequestError for invalid requests, ProviderError for
  /// station failures.
  Outcome run(const RunRequest& request);

  /// Previously computed run still held by the cache, or null.
  std::shared_ptr<const RunResult> find(const std::string& run_id);

 private:
  std::shared_ptr<const RunResult> execute(const RunRequest& request, const std::string& run_id) const;

  std::shared_ptr<const DataCatalog> catalog_;
  std::shared_ptr<StationProvider> provider_;
  EngineOptions options_;
  LruCache<std::string, std::shared_ptr<const RunResult>> cache_;
};

}  // namespace loci::service
