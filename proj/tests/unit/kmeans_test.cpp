#include <gtest/gtest.h>

#include <set>

#include "brute_kmeans.hpp"
#include "generators.hpp"
#include "loci/errors.hpp"
#include "loci/kmeans.hpp"

namespace {

using loci::KMeansParams;
using loci::Matrix;

Matrix three_blobs(testsupport::Rng& rng, std::size_t per_blob, std::vector<int>& truth) {
  std::normal_distribution<double> g(0.0, 0.1);
  const double centers[3][2] = {{0, 0}, {10, 0}, {5, 10}};
  Matrix m(0, 2);
  for (std::size_t i = 0; i < 3 * per_blob; ++i) {
    const int b = static_cast<int>(i % 3);
    const double row[2] = {centers[b][0] + g(rng), centers[b][1] + g(rng)};
    m.append_row(row);
    truth.push_back(b);
  }
  return m;
}

TEST(KMeans, InertiaNeverIncreases) {
  testsupport::Rng rng(1);
  for (int i = 0; i < 40; ++i) {
    const auto pts = testsupport::random_matrix(rng, 10 + rng() % 200, 2 + rng() % 2);
    const int k = 1 + static_cast<int>(rng() % 8);
    const auto r = loci::kmeans(pts, KMeansParams{k, rng()});
    for (std::size_t h = 1; h < r.inertia_history.size(); ++h) {
      EXPECT_LE(r.inertia_history[h], r.inertia_history[h - 1] * (1 + 1e-12));
    }
    EXPECT_LE(r.inertia, r.inertia_history.back() * (1 + 1e-12));
  }
}

TEST(KMeans, RecoversWellSeparatedBlobs) {
  testsupport::Rng rng(42);
  std::vector<int> truth;
  const auto pts = three_blobs(rng, 10, truth);
  const auto r = loci::kmeans(pts, KMeansParams{3, 7});
  EXPECT_TRUE(r.converged);
  std::set<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < truth.size(); ++i) pairs.emplace(truth[i], r.labeling.labels[i]);
  EXPECT_EQ(pairs.size(), 3u);
  const auto best = oracle::best_of_all_triples(testsupport::to_rows(pts));
  EXPECT_NEAR(r.inertia, best.inertia, 1e-9 * best.inertia);
}

TEST(KMeans, KEqualsNGivesZeroInertia) {
  testsupport::Rng rng(2);
  const auto pts = testsupport::random_matrix(rng, 25, 2);
  const auto r = loci::kmeans(pts, KMeansParams{25, 3});
  EXPECT_EQ(r.inertia, 0.0);
  EXPECT_EQ(r.labeling.clusters, 25);
}

TEST(KMeans, InitCentersAreUsed) {
  const Matrix pts(4, 1, {0, 1, 10, 11});
  const auto r = loci::kmeans(pts, KMeansParams{2, 0}, Matrix(2, 1, {11, 0}));
  EXPECT_EQ(r.labeling.labels, (std::vector<int>{1, 1, 0, 0}));
  EXPECT_DOUBLE_EQ(r.centers(0, 0), 10.5);
  EXPECT_DOUBLE_EQ(r.centers(1, 0), 0.5);
  EXPECT_DOUBLE_EQ(r.inertia, 1.0);
}

TEST(KMeans, EmptyClusterIsReseeded) {
  // The second initial center is far from everything and starts empty.
  const Matrix pts(4, 1, {0, 1, 2, 3});
  const auto r = loci::kmeans(pts, KMeansParams{2, 0}, Matrix(2, 1, {1.5, 100}));
  std::set<int> used(r.labeling.labels.begin(), r.labeling.labels.end());
  EXPECT_EQ(used.size(), 2u);
  EXPECT_LE(r.inertia, 2.0);
}

TEST(KMeans, DeterministicForSeed) {
  testsupport::Rng rng(4);
  const auto pts = testsupport::random_matrix(rng, 100, 2);
  const auto a = loci::kmeans(pts, KMeansParams{5, 99});
  const auto b = loci::kmeans(pts, KMeansParams{5, 99});
  EXPECT_EQ(a.labeling.labels, b.labeling.labels);
  EXPECT_EQ(a.centers, b.centers);
}

TEST(KMeans, RejectsBadParameters) {
  const Matrix pts(3, 1, {0, 1, 2});
  EXPECT_THROW(loci::kmeans(pts, KMeansParams{0, 0}), loci::ParameterError);
  EXPECT_THROW(loci::kmeans(pts, KMeansParams{4, 0}), loci::ParameterError);
  EXPECT_THROW(loci::kmeans(pts, KMeansParams{2, 0}, Matrix(2, 2)), loci::ParameterError);
}

}  // namespace
