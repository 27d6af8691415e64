#include "rkm/core.hpp"

#include <limits>

namespace rkm {

Dataset::Dataset(Points points) : points_(std::move(points)) {
  if (points_.rows() < 1 || points_.cols() < 1) {
    throw std::invalid_argument("Dataset: need at least one point and one dimension");
  }
  if (!points_.allFinite()) {
    throw std::invalid_argument("Dataset: coordinates must be finite");
  }
}

Dataset Dataset::subset(const std::vector<Eigen::Index>& indices) const {
  return Dataset(points_(indices, Eigen::all));
}

LabelVector assign_points(const Points& centers, const Dataset& dataset) {
  if (centers.rows() == 0) {
    throw ContractViolation("assign_points: empty center list");
  }
  if (centers.cols() != dataset.dim()) {
    throw ContractViolation("assign_points: center dimension does not match dataset");
  }
  const auto& x = dataset.points();
  LabelVector labels(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    int best_j = 0;
    for (Eigen::Index j = 0; j < centers.rows(); ++j) {
      const double d2 = (x.row(i) - centers.row(j)).squaredNorm();
      // strict < keeps the lowest index on ties
      if (d2 < best) {
        best = d2;
        best_j = static_cast<int>(j);
      }
    }
    labels[static_cast<std::size_t>(i)] = best_j;
  }
  return labels;
}

double compute_inertia(const Dataset& dataset, const Points& centers, const LabelVector& labels) {
  if (labels.size() != static_cast<std::size_t>(dataset.size())) {
    throw ContractViolation("compute_inertia: label count does not match dataset");
  }
  double total = 0.0;
  for (Eigen::Index i = 0; i < dataset.size(); ++i) {
    const int label = labels[static_cast<std::size_t>(i)];
    if (label < 0) continue;
    if (label >= centers.rows()) {
      throw ContractViolation("compute_inertia: label " + std::to_string(label) + " has no center");
    }
    total += (dataset.point(i) - centers.row(label)).squaredNorm();
  }
  return total;
}

std::vector<std::size_t> cluster_sizes(const LabelVector& labels, Eigen::Index k) {
  std::vector<std::size_t> sizes(static_cast<std::size_t>(k), 0);
  for (int label : labels) {
    if (label < 0) continue;
    if (label >= k) {
      throw ContractViolation("cluster_sizes: label " + std::to_string(label) + " out of range");
    }
    ++sizes[static_cast<std::size_t>(label)];
  }
  return sizes;
}

}  // namespace rkm
