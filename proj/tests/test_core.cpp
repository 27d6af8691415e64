#include <gtest/gtest.h>

#include <Eigen/Geometry>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rkm/core.hpp"

using namespace rkm;

namespace {

Points pts(std::initializer_list<std::initializer_list<double>> rows) {
  Points p(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double v : r) p(i, j++) = v;
    ++i;
  }
  return p;
}

}  // namespace

TEST(Distance, Examples) {
  Point a(2), b(2);
  a << 1, 2;
  EXPECT_DOUBLE_EQ(euclidean_distance(a, a), 0.0);
  a << 0, 0;
  b << 3, 4;
  EXPECT_DOUBLE_EQ(euclidean_distance(a, b), 5.0);
}

TEST(Distance, MatchesHandFormula) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(-100, 100);
  for (int t = 0; t < 200; ++t) {
    Point a(3), b(3);
    a << u(gen), u(gen), u(gen);
    b << u(gen), u(gen), u(gen);
    const double expect = std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) +
                                    (a[2] - b[2]) * (a[2] - b[2]));
    EXPECT_NEAR(euclidean_distance(a, b), expect, 1e-12 * (1 + expect));
  }
}

TEST(Distance, DimensionMismatchThrows) {
  Point a(2), b(3);
  a.setZero();
  b.setZero();
  EXPECT_THROW(euclidean_distance(a, b), ContractViolation);
}

TEST(Distance, MetricAxioms) {
  std::mt19937_64 gen(11);
  for (int t = 0; t < 500; ++t) {
    const Points p = oracle::random_points(gen, 3, 4);
    const auto a = p.row(0), b = p.row(1), c = p.row(2);
    EXPECT_GE(euclidean_distance(a, b), 0.0);
    EXPECT_DOUBLE_EQ(euclidean_distance(a, b), euclidean_distance(b, a));
    EXPECT_LE(euclidean_distance(a, c), euclidean_distance(a, b) + euclidean_distance(b, c) + 1e-12);
  }
}

TEST(Distance, FloatScalar) {
  Eigen::RowVector2f a(0.f, 0.f), b(3.f, 4.f);
  EXPECT_FLOAT_EQ(euclidean_distance(a, b), 5.f);
}

TEST(DatasetTest, RejectsEmptyAndNonFinite) {
  EXPECT_THROW(Dataset(Points(0, 2)), std::invalid_argument);
  Points p = pts({{0, 1}, {2, 3}});
  p(1, 0) = std::nan("");
  EXPECT_THROW(Dataset{p}, std::invalid_argument);
  p(1, 0) = INFINITY;
  EXPECT_THROW(Dataset{p}, std::invalid_argument);
}

TEST(DatasetTest, Subset) {
  Dataset d(pts({{0, 0}, {1, 1}, {2, 2}}));
  const auto s = d.subset({2, 0});
  ASSERT_EQ(s.size(), 2);
  EXPECT_EQ(s.point(0)[0], 2.0);
  EXPECT_EQ(s.point(1)[0], 0.0);
}

TEST(AssignPoints, SingleCenterLabelsAllZero) {
  Dataset d(pts({{0, 0}, {5, 1}, {-3, 2}}));
  const auto labels = assign_points(pts({{100, 100}}), d);
  EXPECT_EQ(labels, (LabelVector{0, 0, 0}));
}

TEST(AssignPoints, NearestCenter) {
  Dataset d(pts({{0, 0}, {10, 0}, {4, 0}, {6, 0}}));
  const auto labels = assign_points(pts({{0, 0}, {10, 0}}), d);
  EXPECT_EQ(labels, (LabelVector{0, 1, 0, 1}));
}

TEST(AssignPoints, TieGoesToLowestIndex) {
  Dataset d(pts({{5, 0}}));
  const auto labels = assign_points(pts({{20, 0}, {10, 0}, {20, 0}, {0, 0}}), d);
  EXPECT_EQ(labels[0], 1);
}

TEST(AssignPoints, EmptyCentersThrows) {
  Dataset d(pts({{0, 0}}));
  EXPECT_THROW(assign_points(Points(0, 2), d), ContractViolation);
}

TEST(AssignPoints, IdempotentAndNearest) {
  std::mt19937_64 gen(3);
  for (int t = 0; t < 100; ++t) {
    Dataset d(oracle::random_points(gen, 40, 2));
    const Points c = oracle::random_points(gen, 5, 2);
    const auto a = assign_points(c, d);
    EXPECT_EQ(a, assign_points(c, d));
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      const auto own = oracle::distance(oracle::row(d.points(), i), oracle::row(c, a[static_cast<std::size_t>(i)]));
      for (Eigen::Index j = 0; j < c.rows(); ++j) {
        EXPECT_LE(own, oracle::distance(oracle::row(d.points(), i), oracle::row(c, j)) + 1e-12);
      }
    }
  }
}

TEST(Inertia, Examples) {
  Dataset d(pts({{0, 0}, {2, 0}}));
  EXPECT_DOUBLE_EQ(compute_inertia(d, pts({{1, 0}}), {0, 0}), 2.0);
  EXPECT_DOUBLE_EQ(compute_inertia(d, pts({{0, 0}, {2, 0}}), {0, 1}), 0.0);
}

TEST(Inertia, OutliersSkipped) {
  Dataset d(pts({{0, 0}, {2, 0}, {50, 50}}));
  EXPECT_DOUBLE_EQ(compute_inertia(d, pts({{1, 0}}), {0, 0, kOutlier}), 2.0);
}

TEST(Inertia, InvariantUnderRigidMotion) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int t = 0; t < 100; ++t) {
    const Points x = oracle::random_points(gen, 30, 3);
    const Points c = oracle::random_points(gen, 4, 3);
    const Eigen::Matrix3d r =
        Eigen::AngleAxisd(3.0 * u(gen), Eigen::Vector3d(u(gen), u(gen), u(gen) + 2).normalized()).toRotationMatrix();
    const Eigen::RowVector3d shift(10 * u(gen), 10 * u(gen), 10 * u(gen));
    const Points x2 = (x * r.transpose()).rowwise() + shift;
    const Points c2 = (c * r.transpose()).rowwise() + shift;
    const Dataset d(x), d2(x2);
    const auto labels = assign_points(c, d);
    EXPECT_EQ(assign_points(c2, d2), labels);
    const double i1 = compute_inertia(d, c, labels);
    const double i2 = compute_inertia(d2, c2, labels);
    EXPECT_NEAR(i1, i2, 1e-9 * i1);
  }
}

TEST(ClusterSizesTest, CountsIgnoringOutliers) {
  EXPECT_EQ(cluster_sizes({0, 2, 2, kOutlier, 0, 2}, 3), (std::vector<std::size_t>{2, 0, 3}));
}
