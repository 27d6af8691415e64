#ifndef RKM_KMEANS_HPP
#define RKM_KMEANS_HPP

#include <cstdint>

#include "rkm/core.hpp"
#include "rkm/random.hpp"

namespace rkm {

struct KMeansConfig {
  int k = 8;
  int max_iters = 300;
  /// Stop once the summed L2 displacement of all centers is at most `tol`.
  double tol = 1e-4;
  std::uint64_t seed = 0;
};

struct LloydStep {
  Points centers;
  /// Labels of the assignment that produced `centers`, renumbered to index
  /// the surviving centers.
  LabelVector labels;
  double movement = 0.0;
};

/// k-means++ seeding: first center uniform, each further center drawn with
/// probability proportional to its squared distance to the nearest chosen one.
/// Returns k rows taken from distinct dataset indices.
Points kmeanspp_init(const Dataset& dataset, int k, Rng& rng);

/// One assignment + mean update. Centers that receive no points are dropped.
LloydStep lloyd_step(const Dataset& dataset, const Points& centers);

/// k-means++ then Lloyd iterations until convergence or `max_iters`.
/// The returned model has labels, sizes, inertia and radii filled in; it can
/// hold fewer than `k` clusters if some emptied out.
ClusterModel fit_kmeans(const Dataset& dataset, const KMeansConfig& config);

}  // namespace rkm

#endif  // RKM_KMEANS_HPP
