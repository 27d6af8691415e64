#include <gtest/gtest.h>

#include <algorithm>
#include <limits>
#include <random>
#include <set>

#include "oracles.hpp"
#include "rkm/io.hpp"
#include "rkm/kmeans.hpp"
#include "rkm/radius_merge.hpp"

using namespace rkm;

namespace {

Dataset line(std::initializer_list<double> xs) {
  Points p(static_cast<Eigen::Index>(xs.size()), 1);
  Eigen::Index i = 0;
  for (double x : xs) p(i++, 0) = x;
  return Dataset(p);
}

// Minimum SSE over every split of the points into two non-empty groups.
double best_two_partition_sse(const Dataset& d) {
  const auto n = static_cast<int>(d.size());
  double best = std::numeric_limits<double>::infinity();
  for (int mask = 1; mask < (1 << n) - 1; ++mask) {
    double sse = 0.0;
    for (int side = 0; side < 2; ++side) {
      Point mean = Point::Zero(d.dim());
      int count = 0;
      for (int i = 0; i < n; ++i)
        if (((mask >> i) & 1) == side) {
          mean += d.point(i);
          ++count;
        }
      mean /= count;
      for (int i = 0; i < n; ++i)
        if (((mask >> i) & 1) == side) sse += (d.point(i) - mean).squaredNorm();
    }
    best = std::min(best, sse);
  }
  return best;
}

}  // namespace

TEST(KMeansPP, KEqualsNPicksEveryPointOnce) {
  std::mt19937_64 gen(1);
  const Dataset d(oracle::random_points(gen, 25, 2));
  Rng rng(4);
  const Points c = kmeanspp_init(d, 25, rng);
  std::set<std::pair<double, double>> picked;
  for (Eigen::Index j = 0; j < c.rows(); ++j) picked.emplace(c(j, 0), c(j, 1));
  std::set<std::pair<double, double>> all;
  for (Eigen::Index i = 0; i < d.size(); ++i) all.emplace(d.points()(i, 0), d.points()(i, 1));
  EXPECT_EQ(picked, all);
}

TEST(KMeansPP, KEqualsOneIsADataPoint) {
  const Dataset d = line({3, 7, 11});
  Rng rng(9);
  const Points c = kmeanspp_init(d, 1, rng);
  ASSERT_EQ(c.rows(), 1);
  EXPECT_TRUE(c(0, 0) == 3 || c(0, 0) == 7 || c(0, 0) == 11);
}

TEST(KMeansPP, DuplicatePointsStillDistinctIndices) {
  const Dataset d = line({1, 1, 1, 1});
  Rng rng(2);
  const Points c = kmeanspp_init(d, 4, rng);
  EXPECT_EQ(c.rows(), 4);
}

TEST(KMeansPP, SameSeedSameCenters) {
  std::mt19937_64 gen(5);
  const Dataset d(oracle::random_points(gen, 100, 3));
  Rng a(42), b(42);
  EXPECT_EQ(kmeanspp_init(d, 10, a), kmeanspp_init(d, 10, b));
}

TEST(KMeansPP, KOutOfRangeThrows) {
  const Dataset d = line({0, 1, 2});
  Rng rng(0);
  EXPECT_THROW(kmeanspp_init(d, 4, rng), std::invalid_argument);
  EXPECT_THROW(kmeanspp_init(d, 0, rng), std::invalid_argument);
}

TEST(Lloyd, FixedPointHasZeroMovement) {
  const Dataset d = line({0, 2, 10, 12});
  Points c(2, 1);
  c << 1, 11;
  const auto step = lloyd_step(d, c);
  EXPECT_EQ(step.centers, c);
  EXPECT_DOUBLE_EQ(step.movement, 0.0);
}

TEST(Lloyd, SingleCenterMovesToMean) {
  Points x(2, 2);
  x << 0, 0, 2, 0;
  Points c(1, 2);
  c << 5, 5;
  const auto step = lloyd_step(Dataset(x), c);
  EXPECT_DOUBLE_EQ(step.centers(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(step.centers(0, 1), 0.0);
  EXPECT_DOUBLE_EQ(step.movement, std::sqrt(16.0 + 25.0));
}

TEST(Lloyd, OneDimensionalConvergesToOptimalSplit) {
  const Dataset d = line({0, 1, 9, 10});
  Points c(2, 1);
  c << 0.4, 9.4;
  auto step = lloyd_step(d, c);
  EXPECT_DOUBLE_EQ(step.centers(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(step.centers(1, 0), 9.5);
  const double sse = compute_inertia(d, step.centers, assign_points(step.centers, d));
  EXPECT_DOUBLE_EQ(sse, best_two_partition_sse(d));
}

TEST(Lloyd, EmptyClusterDropped) {
  const Dataset d = line({0, 1, 2});
  Points c(3, 1);
  c << 1, 100, 200;
  const auto step = lloyd_step(d, c);
  ASSERT_EQ(step.centers.rows(), 1);
  EXPECT_DOUBLE_EQ(step.centers(0, 0), 1.0);
  EXPECT_EQ(step.labels, (LabelVector{0, 0, 0}));
}

TEST(Lloyd, InertiaNeverIncreases) {
  std::mt19937_64 gen(17);
  for (int t = 0; t < 200; ++t) {
    const Dataset d(oracle::random_points(gen, 60, 2));
    Rng rng(static_cast<std::uint64_t>(t));
    Points c = kmeanspp_init(d, 6, rng);
    double previous = compute_inertia(d, c, assign_points(c, d));
    for (int it = 0; it < 20; ++it) {
      auto step = lloyd_step(d, c);
      c = step.centers;
      const double now = compute_inertia(d, c, assign_points(c, d));
      EXPECT_LE(now, previous + 1e-9 * (1 + previous));
      previous = now;
    }
  }
}

TEST(FitKMeans, KOneGivesMean) {
  std::mt19937_64 gen(3);
  const Dataset d(oracle::random_points(gen, 50, 3));
  const auto m = fit_kmeans(d, {.k = 1, .seed = 5});
  const Point mean = d.points().colwise().mean();
  EXPECT_LT((m.centers.row(0) - mean).norm(), 1e-12);
  EXPECT_EQ(m.labels, LabelVector(50, 0));
  const double total = (d.points().rowwise() - mean).rowwise().squaredNorm().sum();
  EXPECT_NEAR(m.inertia, total, 1e-9 * total);
}

TEST(FitKMeans, TwoBlobsMatchBruteForce) {
  const Dataset d = line({0.0, 0.3, 0.1, 8.0, 8.4, 7.9});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto m = fit_kmeans(d, {.k = 2, .seed = seed});
    EXPECT_NEAR(m.inertia, best_two_partition_sse(d), 1e-12);
  }
}

TEST(FitKMeans, Deterministic) {
  std::mt19937_64 gen(8);
  const Dataset d(oracle::random_points(gen, 200, 2));
  const auto a = fit_kmeans(d, {.k = 7, .seed = 99});
  const auto b = fit_kmeans(d, {.k = 7, .seed = 99});
  EXPECT_EQ(a.labels, b.labels);
  EXPECT_EQ(a.centers, b.centers);
}

TEST(FitKMeans, KNGivesSingletons) {
  std::mt19937_64 gen(12);
  const Dataset d(oracle::random_points(gen, 15, 2));
  const auto m = fit_kmeans(d, {.k = 15, .seed = 1});
  EXPECT_EQ(m.cluster_count(), 15);
  EXPECT_DOUBLE_EQ(m.inertia, 0.0);
  for (auto s : m.sizes) EXPECT_EQ(s, 1u);
}

TEST(FitKMeans, BadConfigThrows) {
  const Dataset d = line({0, 1, 2});
  EXPECT_THROW(fit_kmeans(d, {.k = 4}), std::invalid_argument);
  EXPECT_THROW(fit_kmeans(d, {.k = 2, .max_iters = 0}), std::invalid_argument);
  EXPECT_THROW(fit_kmeans(d, {.k = 2, .tol = -1.0}), std::invalid_argument);
}

TEST(FitKMeans, ModelInvariants) {
  std::mt19937_64 gen(21);
  for (int t = 0; t < 50; ++t) {
    const Dataset d(oracle::random_points(gen, 80, 2));
    const auto m = fit_kmeans(d, {.k = 9, .seed = static_cast<std::uint64_t>(t)});
    const auto k = m.cluster_count();
    ASSERT_LE(k, 9);
    ASSERT_EQ(m.radii.size(), k);
    std::size_t total = 0;
    for (auto s : m.sizes) {
      EXPECT_GT(s, 0u);
      total += s;
    }
    EXPECT_EQ(total, 80u);
    EXPECT_NEAR(m.inertia, compute_inertia(d, m.centers, m.labels), 1e-9);
    EXPECT_EQ(m.labels, assign_points(m.centers, d));
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      const int l = m.labels[static_cast<std::size_t>(i)];
      EXPECT_LE((d.point(i) - m.centers.row(l)).norm(), m.radii[l] + 1e-12);
    }
  }
}

TEST(FitKMeans, TetraFourClustersBestOfFive) {
  const auto data = load_csv(std::string(RKM_DATA_DIR) + "/tetra.csv", true, -1);
  double best = 0.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto m = fit_kmeans(data.dataset, {.k = 4, .seed = seed});
    best = std::max(best, oracle::exhaustive_success(m.labels, *data.truth));
  }
  EXPECT_DOUBLE_EQ(best, 1.0);
}
