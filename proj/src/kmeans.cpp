#include "rkm/kmeans.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "rkm/radius_merge.hpp"

namespace rkm {

namespace {

// Drops centers with no members and renumbers labels to match.
void drop_empty(Points& centers, LabelVector& labels) {
  const auto sizes = cluster_sizes(labels, centers.rows());
  std::vector<int> remap(sizes.size(), -1);
  std::vector<Eigen::Index> keep;
  for (std::size_t j = 0; j < sizes.size(); ++j) {
    if (sizes[j] > 0) {
      remap[j] = static_cast<int>(keep.size());
      keep.push_back(static_cast<Eigen::Index>(j));
    }
  }
  if (keep.size() == sizes.size()) return;
  centers = Points(centers(keep, Eigen::all));
  for (int& label : labels) label = remap[static_cast<std::size_t>(label)];
}

}  // namespace

Points kmeanspp_init(const Dataset& dataset, int k, Rng& rng) {
  const Eigen::Index n = dataset.size();
  if (k < 1 || k > n) {
    throw std::invalid_argument("kmeanspp_init: k=" + std::to_string(k) + " must be in [1, " +
                                std::to_string(n) + "]");
  }
  const auto& x = dataset.points();
  Points centers(k, dataset.dim());
  std::vector<bool> chosen(static_cast<std::size_t>(n), false);

  auto first = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n)));
  centers.row(0) = x.row(first);
  chosen[static_cast<std::size_t>(first)] = true;
  Eigen::VectorXd nearest = (x.rowwise() - x.row(first)).rowwise().squaredNorm();

  for (int c = 1; c < k; ++c) {
    const double total = nearest.sum();
    Eigen::Index pick = -1;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double acc = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (nearest[i] <= 0.0) continue;
        acc += nearest[i];
        pick = i;
        if (acc > target) break;
      }
    } else {
      // every remaining point duplicates a chosen center
      const auto remaining = static_cast<std::uint64_t>(n - c);
      auto skip = rng.below(remaining);
      for (Eigen::Index i = 0; i < n; ++i) {
        if (chosen[static_cast<std::size_t>(i)]) continue;
        if (skip-- == 0) {
          pick = i;
          break;
        }
      }
    }
    centers.row(c) = x.row(pick);
    chosen[static_cast<std::size_t>(pick)] = true;
    nearest = nearest.cwiseMin((x.rowwise() - x.row(pick)).rowwise().squaredNorm());
    nearest[pick] = 0.0;
  }
  return centers;
}

LloydStep lloyd_step(const Dataset& dataset, const Points& centers) {
  LloydStep step;
  step.labels = assign_points(centers, dataset);

  const auto k = centers.rows();
  Points sums = Points::Zero(k, dataset.dim());
  std::vector<std::size_t> counts(static_cast<std::size_t>(k), 0);
  for (Eigen::Index i = 0; i < dataset.size(); ++i) {
    const auto label = step.labels[static_cast<std::size_t>(i)];
    sums.row(label) += dataset.point(i);
    ++counts[static_cast<std::size_t>(label)];
  }

  std::vector<Eigen::Index> survivors;
  std::vector<int> remap(static_cast<std::size_t>(k), -1);
  for (Eigen::Index j = 0; j < k; ++j) {
    if (counts[static_cast<std::size_t>(j)] > 0) {
      remap[static_cast<std::size_t>(j)] = static_cast<int>(survivors.size());
      survivors.push_back(j);
    }
  }

  step.centers.resize(static_cast<Eigen::Index>(survivors.size()), dataset.dim());
  for (std::size_t s = 0; s < survivors.size(); ++s) {
    const auto j = survivors[s];
    const auto row = static_cast<Eigen::Index>(s);
    step.centers.row(row) = sums.row(j) / static_cast<double>(counts[static_cast<std::size_t>(j)]);
    step.movement += (step.centers.row(row) - centers.row(j)).norm();
  }
  for (int& label : step.labels) label = remap[static_cast<std::size_t>(label)];
  return step;
}

ClusterModel fit_kmeans(const Dataset& dataset, const KMeansConfig& config) {
  if (config.k < 1 || config.k > dataset.size()) {
    throw std::invalid_argument("fit_kmeans: k=" + std::to_string(config.k) + " must be in [1, " +
                                std::to_string(dataset.size()) + "]");
  }
  if (config.max_iters < 1) throw std::invalid_argument("fit_kmeans: max_iters must be positive");
  if (!(config.tol >= 0.0)) throw std::invalid_argument("fit_kmeans: tol must be non-negative");

  Rng rng(config.seed);
  Points centers = kmeanspp_init(dataset, config.k, rng);
  for (int iter = 0; iter < config.max_iters; ++iter) {
    auto step = lloyd_step(dataset, centers);
    centers = std::move(step.centers);
    if (step.movement <= config.tol) break;
  }

  ClusterModel model;
  model.labels = assign_points(centers, dataset);
  drop_empty(centers, model.labels);
  model.centers = std::move(centers);
  model.sizes = cluster_sizes(model.labels, model.centers.rows());
  model.inertia = compute_inertia(dataset, model.centers, model.labels);
  model.radii = compute_radii(dataset, model.centers, model.labels);
  return model;
}

}  // namespace rkm
