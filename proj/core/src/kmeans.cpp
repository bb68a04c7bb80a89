#include "loci/kmeans.hpp"

#include <limits>
#include <random>
#include <string>

#include "loci/errors.hpp"

namespace loci {
namespace {

Matrix plus_plus_seeding(const Matrix& points, std::size_t k, std::mt19937_64& rng) {
  const std::size_t n = points.rows();
  Matrix centers(0, points.dims());
  std::vector<double> d2(n, std::numeric_limits<double>::infinity());
  std::vector<bool> chosen(n, false);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::size_t pick = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  for (std::size_t c = 0; c < k; ++c) {
    chosen[pick] = true;
    centers.append_row(points.row(pick));
    if (c + 1 == k) break;

    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], squared_distance(points.row(i), points.row(pick)));
      total += d2[i];
    }
    if (total > 0.0) {
      const double target = unit(rng) * total;
      double acc = 0.0;
      pick = n;
      std::size_t last_positive = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (d2[i] <= 0.0) continue;
        last_positive = i;
        acc += d2[i];
        if (acc > target) {
          pick = i;
          break;
        }
      }
      if (pick == n) pick = last_positive;
    } else {
      // All remaining points coincide with a chosen center; take any unused row.
      std::vector<std::size_t> unused;
      for (std::size_t i = 0; i < n; ++i) {
        if (!chosen[i]) unused.push_back(i);
      }
      pick = unused[std::uniform_int_distribution<std::size_t>(0, unused.size() - 1)(rng)];
    }
  }
  return centers;
}

/// Returns the assignment cost against `centers`.
double assign(const Matrix& points, const Matrix& centers, std::vector<int>& labels, std::vector<double>& cost) {
  double total = 0.0;
  for (std::size_t i = 0; i < points.rows(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    int best_c = 0;
    for (std::size_t c = 0; c < centers.rows(); ++c) {
      const double d = squared_distance(points.row(i), centers.row(c));
      if (d < best) {
        best = d;
        best_c = static_cast<int>(c);
      }
    }
    labels[i] = best_c;
    cost[i] = best;
    total += best;
  }
  return total;
}

/// Moves the farthest point of a multi-member cluster into each empty
/// cluster. Returns the adjusted total cost.
double reseed_empty(const Matrix& points, Matrix& centers, std::vector<int>& labels, std::vector<double>& cost,
                    double total, bool& reseeded) {
  reseeded = false;
  const std::size_t k = centers.rows();
  std::vector<std::size_t> sizes(k, 0);
  for (int l : labels) ++sizes[static_cast<std::size_t>(l)];
  for (std::size_t c = 0; c < k; ++c) {
    if (sizes[c] != 0) continue;
    std::size_t far = points.rows();
    double far_cost = -1.0;
    for (std::size_t i = 0; i < points.rows(); ++i) {
      if (sizes[static_cast<std::size_t>(labels[i])] > 1 && cost[i] > far_cost) {
        far_cost = cost[i];
        far = i;
      }
    }
    if (far == points.rows()) break;
    --sizes[static_cast<std::size_t>(labels[far])];
    ++sizes[c];
    labels[far] = static_cast<int>(c);
    for (std::size_t d = 0; d < points.dims(); ++d) centers(c, d) = points(far, d);
    total -= cost[far];
    cost[far] = 0.0;
    reseeded = true;
  }
  return total;
}

void update_centers(const Matrix& points, const std::vector<int>& labels, Matrix& centers) {
  const std::size_t k = centers.rows();
  const std::size_t dims = points.dims();
  Matrix sums(k, dims);
  std::vector<std::size_t> sizes(k, 0);
  for (std::size_t i = 0; i < points.rows(); ++i) {
    const auto c = static_cast<std::size_t>(labels[i]);
    ++sizes[c];
    for (std::size_t d = 0; d < dims; ++d) sums(c, d) += points(i, d);
  }
  for (std::size_t c = 0; c < k; ++c) {
    if (sizes[c] == 0) continue;
    for (std::size_t d = 0; d < dims; ++d) centers(c, d) = sums(c, d) / static_cast<double>(sizes[c]);
  }
}

}  // namespace

KMeansResult kmeans(const Matrix& points, const KMeansParams& params, const std::optional<Matrix>& init_centers) {
  const std::size_t n = points.rows();
  if (params.k < 1) throw ParameterError("k must be >= 1, got " + std::to_string(params.k));
  const auto k = static_cast<std::size_t>(params.k);
  if (k > n) throw ParameterError("k = " + std::to_string(k) + " exceeds the " + std::to_string(n) + " points");
  if (params.max_iterations < 1) throw ParameterError("max_iterations must be >= 1");

  KMeansResult out;
  out.labeling.params = params;
  out.labeling.feature_space = points.dims() == 3 ? FeatureSpace::temp_influenced : FeatureSpace::without_temp;

  if (init_centers) {
    if (init_centers->rows() != k || init_centers->dims() != points.dims()) {
      throw ParameterError("init_centers must be " + std::to_string(k) + "x" + std::to_string(points.dims()));
    }
    out.centers = *init_centers;
  } else {
    std::mt19937_64 rng(params.seed);
    out.centers = plus_plus_seeding(points, k, rng);
  }

  std::vector<int> labels(n, -1), previous;
  std::vector<double> cost(n, 0.0);
  for (int it = 0; it < params.max_iterations; ++it) {
    double total = assign(points, out.centers, labels, cost);
    bool reseeded = false;
    total = reseed_empty(points, out.centers, labels, cost, total, reseeded);
    out.inertia_history.push_back(total);
    ++out.iterations;
    if (!reseeded && labels == previous) {
      out.converged = true;
      break;
    }
    update_centers(points, labels, out.centers);
    previous = labels;
  }

  // Final inertia against the final centers.
  double inertia = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    inertia += squared_distance(points.row(i), out.centers.row(static_cast<std::size_t>(labels[i])));
  }
  out.inertia = inertia;
  out.labeling.labels = std::move(labels);
  out.labeling.clusters = params.k;
  return out;
}

}  // namespace loci
