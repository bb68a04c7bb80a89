#include "loci/dbscan.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <string>
#include <unordered_map>

#include "loci/errors.hpp"

namespace loci {

std::size_t ClusterLabeling::noise_count() const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), kNoise));
}

namespace {

constexpr std::size_t kMaxGridDims = 3;
// Cells are a hair smaller than epsilon / sqrt(dims) so that two points in one
// cell are within epsilon even after rounding. The guard keeps cell
// coordinates small enough for that rounding argument to hold.
constexpr double kCellShrink = 0.999999;
constexpr double kMaxCellCoordinate = 1.0e9;

using CellKey = std::array<std::int64_t, kMaxGridDims>;

struct CellKeyHash {
  std::size_t operator()(const CellKey& k) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (std::int64_t v : k) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

struct Cell {
  CellKey key{};
  std::vector<std::size_t> members;
  std::vector<std::size_t> cores;
  std::vector<std::size_t> neighbors;  // other cells that can hold points within epsilon
};

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

// Grid of cells with diameter below epsilon. Every point of a cell holding
// min_pts points is core, and cores sharing a cell share a cluster, so dense
// regions never need per-point range queries.
class CellGrid {
 public:
  // Returns false when the coordinates do not suit a grid.
  bool build(const Matrix& points, double epsilon) {
    const std::size_t d = points.dims();
    if (d == 0 || d > kMaxGridDims) return false;
    side_ = epsilon / std::sqrt(static_cast<double>(d)) * kCellShrink;
    cell_of_.resize(points.rows());
    std::unordered_map<CellKey, std::size_t, CellKeyHash> index;
    for (std::size_t r = 0; r < points.rows(); ++r) {
      CellKey key{0, 0, 0};
      for (std::size_t c = 0; c < d; ++c) {
        const double q = std::floor(points(r, c) / side_);
        if (!std::isfinite(q) || std::abs(q) > kMaxCellCoordinate) return false;
        key[c] = static_cast<std::int64_t>(q);
      }
      auto [it, inserted] = index.try_emplace(key, cells_.size());
      if (inserted) cells_.push_back(Cell{key, {}, {}, {}});
      cells_[it->second].members.push_back(r);
      cell_of_[r] = it->second;
    }

    const auto reach = static_cast<std::int64_t>(std::ceil(epsilon / side_));
    const double eps_sq = epsilon * epsilon;
    std::vector<CellKey> offsets;
    const std::int64_t span = 2 * reach + 1;
    std::int64_t combos = 1;
    for (std::size_t c = 0; c < d; ++c) combos *= span;
    for (std::int64_t m = 0; m < combos; ++m) {
      CellKey off{0, 0, 0};
      std::int64_t rest = m;
      double gap_sq = 0.0;
      bool self = true;
      for (std::size_t c = 0; c < d; ++c) {
        off[c] = rest % span - reach;
        rest /= span;
        const double gap = static_cast<double>(std::max<std::int64_t>(0, std::abs(off[c]) - 1)) * side_;
        gap_sq += gap * gap;
        self = self && off[c] == 0;
      }
      if (!self && gap_sq <= eps_sq) offsets.push_back(off);
    }

    for (Cell& cell : cells_) {
      for (const CellKey& off : offsets) {
        CellKey key = cell.key;
        for (std::size_t c = 0; c < d; ++c) key[c] += off[c];
        if (const auto it = index.find(key); it != index.end()) cell.neighbors.push_back(it->second);
      }
    }
    return true;
  }

  std::vector<Cell>& cells() { return cells_; }
  std::size_t cell_of(std::size_t point) const { return cell_of_[point]; }

 private:
  double side_ = 0.0;
  std::vector<Cell> cells_;
  std::vector<std::size_t> cell_of_;
};

ClusterLabeling grid_dbscan(const Matrix& points, CellGrid& grid, double epsilon, std::size_t min_pts,
                            ClusterLabeling out) {
  const double eps_sq = epsilon * epsilon;
  const std::size_t n = points.rows();
  auto& cells = grid.cells();
  auto close = [&](std::size_t a, std::size_t b) { return squared_distance(points.row(a), points.row(b)) <= eps_sq; };

  std::vector<bool> core(n, false);
  for (Cell& cell : cells) {
    if (cell.members.size() >= min_pts) {
      for (std::size_t p : cell.members) core[p] = true;
      cell.cores = cell.members;
      continue;
    }
    for (std::size_t p : cell.members) {
      std::size_t count = cell.members.size();
      for (std::size_t nb : cell.neighbors) {
        for (std::size_t q : cells[nb].members) {
          if (close(p, q) && ++count >= min_pts) break;
        }
        if (count >= min_pts) break;
      }
      if (count >= min_pts) {
        core[p] = true;
        cell.cores.push_back(p);
      }
    }
  }

  DisjointSets sets(n);
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    const Cell& cell = cells[ci];
    if (cell.cores.empty()) continue;
    for (std::size_t p : cell.cores) sets.unite(cell.cores.front(), p);
    for (std::size_t nb : cell.neighbors) {
      const Cell& other = cells[nb];
      if (nb < ci || other.cores.empty() || sets.find(cell.cores.front()) == sets.find(other.cores.front())) continue;
      bool linked = false;
      for (std::size_t p : cell.cores) {
        for (std::size_t q : other.cores) {
          if (close(p, q)) {
            linked = true;
            break;
          }
        }
        if (linked) break;
      }
      if (linked) sets.unite(cell.cores.front(), other.cores.front());
    }
  }

  // Clusters are numbered by their lowest-index core point, matching a
  // sequential scan that seeds a cluster at each unclaimed core point.
  std::vector<int> cluster_of_root(n, kNoise);
  for (std::size_t p = 0; p < n; ++p) {
    if (!core[p]) continue;
    const std::size_t root = sets.find(p);
    if (cluster_of_root[root] == kNoise) cluster_of_root[root] = out.clusters++;
    out.labels[p] = cluster_of_root[root];
  }

  // A border point belongs to the first-numbered cluster that reaches it.
  for (std::size_t p = 0; p < n; ++p) {
    if (core[p]) continue;
    int best = kNoise;
    const Cell& cell = cells[grid.cell_of(p)];
    auto consider = [&](const Cell& c) {
      for (std::size_t q : c.cores) {
        if ((best == kNoise || out.labels[q] < best) && close(p, q)) best = out.labels[q];
      }
    };
    consider(cell);
    for (std::size_t nb : cell.neighbors) consider(cells[nb]);
    out.labels[p] = best;
  }
  return out;
}

constexpr int kUnvisited = -2;

// Sequential scan with breadth-first expansion over brute-force range
// queries. Used when the grid does not apply.
ClusterLabeling scan_dbscan(const Matrix& points, double epsilon, std::size_t min_pts, ClusterLabeling out) {
  const double eps_sq = epsilon * epsilon;
  const std::size_t n = points.rows();
  auto query = [&](std::size_t i, std::vector<std::size_t>& found) {
    found.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (squared_distance(points.row(i), points.row(j)) <= eps_sq) found.push_back(j);
    }
  };

  out.labels.assign(n, kUnvisited);
  std::vector<std::size_t> neighbors;
  std::deque<std::size_t> frontier;
  for (std::size_t i = 0; i < n; ++i) {
    if (out.labels[i] != kUnvisited) continue;
    query(i, neighbors);
    if (neighbors.size() < min_pts) {
      out.labels[i] = kNoise;
      continue;
    }
    const int cluster = out.clusters++;
    out.labels[i] = cluster;
    auto claim = [&] {
      for (std::size_t j : neighbors) {
        if (out.labels[j] == kUnvisited) {
          out.labels[j] = cluster;
          frontier.push_back(j);
        } else if (out.labels[j] == kNoise) {
          out.labels[j] = cluster;
        }
      }
    };
    claim();
    while (!frontier.empty()) {
      const std::size_t j = frontier.front();
      frontier.pop_front();
      query(j, neighbors);
      if (neighbors.size() >= min_pts) claim();
    }
  }
  return out;
}

}  // namespace

ClusterLabeling dbscan(const Matrix& points, const DbscanParams& params) {
  if (!std::isfinite(params.epsilon) || params.epsilon <= 0.0) {
    throw ParameterError("epsilon must be finite and > 0, got " + std::to_string(params.epsilon));
  }
  if (params.min_pts < 1) throw ParameterError("min_pts must be >= 1, got " + std::to_string(params.min_pts));

  ClusterLabeling out;
  out.params = params;
  out.feature_space = points.dims() == 3 ? FeatureSpace::temp_influenced : FeatureSpace::without_temp;
  out.labels.assign(points.rows(), kNoise);
  if (points.rows() == 0) return out;

  const auto min_pts = static_cast<std::size_t>(params.min_pts);
  CellGrid grid;
  if (grid.build(points, params.epsilon)) return grid_dbscan(points, grid, params.epsilon, min_pts, std::move(out));
  return scan_dbscan(points, params.epsilon, min_pts, std::move(out));
}

}  // namespace loci
