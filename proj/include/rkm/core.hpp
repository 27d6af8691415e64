#ifndef RKM_CORE_HPP
#define RKM_CORE_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace rkm {

/// Row-major so that `points.row(i)` is a contiguous point.
template <typename Scalar>
using PointMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename Scalar>
using PointVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

using Points = PointMatrix<double>;
using Point = PointVector<double>;
using Radii = Eigen::VectorXd;

/// Per-point cluster ids. Negative ids mark points excluded as outliers.
using LabelVector = std::vector<int>;

inline constexpr int kOutlier = -1;

/// Raised when a caller breaks a documented precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Immutable n x d matrix of finite coordinates.
class Dataset {
 public:
  explicit Dataset(Points points);

  const Points& points() const noexcept { return points_; }
  Eigen::Index size() const noexcept { return points_.rows(); }
  Eigen::Index dim() const noexcept { return points_.cols(); }
  auto point(Eigen::Index i) const { return points_.row(i); }

  /// Rows selected by `indices`, in order.
  Dataset subset(const std::vector<Eigen::Index>& indices) const;

 private:
  Points points_;
};

struct ClusterModel {
  Points centers;
  LabelVector labels;
  Radii radii;
  double inertia = 0.0;
  std::vector<std::size_t> sizes;

  Eigen::Index cluster_count() const noexcept { return centers.rows(); }
};

template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar euclidean_distance(const Eigen::MatrixBase<DerivedA>& a,
                                             const Eigen::MatrixBase<DerivedB>& b) {
  if (a.size() != b.size()) {
    throw ContractViolation("euclidean_distance: dimension mismatch (" + std::to_string(a.size()) +
                            " vs " + std::to_string(b.size()) + ")");
  }
  return (a.derived().reshaped() - b.derived().reshaped()).norm();
}

template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar squared_distance(const Eigen::MatrixBase<DerivedA>& a,
                                           const Eigen::MatrixBase<DerivedB>& b) {
  return (a.derived().reshaped() - b.derived().reshaped()).squaredNorm();
}

/// Nearest center per point; ties go to the lowest center index.
LabelVector assign_points(const Points& centers, const Dataset& dataset);

/// Sum of squared distances from each point to its assigned center.
/// Points labelled kOutlier contribute nothing.
double compute_inertia(const Dataset& dataset, const Points& centers, const LabelVector& labels);

/// Member count per cluster id in [0, k).
std::vector<std::size_t> cluster_sizes(const LabelVector& labels, Eigen::Index k);

}  // namespace rkm

#endif  // RKM_CORE_HPP
