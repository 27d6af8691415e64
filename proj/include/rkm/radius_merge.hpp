#ifndef RKM_RADIUS_MERGE_HPP
#define RKM_RADIUS_MERGE_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "rkm/core.hpp"
#include "rkm/kmeans.hpp"

namespace rkm {

/// A cluster's extent: its center and the distance to its farthest member.
struct Circle {
  Point center;
  double radius = 0.0;
  /// Member count; 0 when unknown.
  std::size_t size = 0;
};

/// Undirected graph over cluster ids. Edges are stored as (i, j) with i < j,
/// sorted lexicographically.
struct MergeGraph {
  int node_count = 0;
  std::vector<std::pair<int, int>> edges;
};

struct Components {
  std::vector<int> component_of;
  int count = 0;
};

struct MergedPartition {
  /// Original cluster id -> component id, or kOutlier for filtered clusters.
  std::vector<int> component_of;
  LabelVector final_labels;
  int component_count = 0;
  /// The original circles absorbed by each component, in cluster-id order.
  std::vector<std::vector<Circle>> member_circles;
  /// Point indices removed by the zero-radius filter.
  std::vector<Eigen::Index> outliers;
};

struct FilteredModel {
  ClusterModel model;
  /// Kept cluster id -> id in the unfiltered model.
  std::vector<int> original_id;
  std::vector<Eigen::Index> outliers;
};

/// radii[i] = max distance from center i to a point labelled i.
/// Every cluster must have at least one member.
Radii compute_radii(const Dataset& dataset, const Points& centers, const LabelVector& labels);

/// Closed-ball overlap: distance(center_a, center_b) <= radius_a + radius_b.
template <typename DerivedA, typename DerivedB>
bool overlap(const Eigen::MatrixBase<DerivedA>& center_a, double radius_a,
             const Eigen::MatrixBase<DerivedB>& center_b, double radius_b) {
  return euclidean_distance(center_a, center_b) <= radius_a + radius_b;
}

inline bool overlap(const Circle& a, const Circle& b) {
  return overlap(a.center, a.radius, b.center, b.radius);
}

MergeGraph build_adjacency(const Points& centers, const Radii& radii);
MergeGraph build_adjacency(const std::vector<Circle>& circles);

/// Components numbered in order of their smallest node id.
Components connected_components(const MergeGraph& graph);

/// Removes singleton clusters of radius zero and reports their points.
FilteredModel filter_zero_radius(const ClusterModel& model);

/// Single-pass radius merge: one adjacency graph over the model's circles,
/// one connected-components pass, no recomputed centroids.
MergedPartition merge_clusters(const ClusterModel& model, bool filter_outliers = false);

/// fit_kmeans followed by merge_clusters.
MergedPartition fit_and_merge(const Dataset& dataset, const KMeansConfig& config,
                              bool filter_outliers = false);

struct SweepEntry {
  int k = 0;
  std::vector<int> component_counts;
  int modal_count = 0;
  /// Mean success_score over all pairs of runs; 1 with a single run.
  double mean_agreement = 1.0;
};

struct SweepReport {
  std::vector<SweepEntry> entries;
  /// Half-open index range into `entries`: the longest run of consecutive k
  /// values with the same modal component count (earliest on ties).
  std::size_t stable_begin = 0;
  std::size_t stable_end = 0;

  int stable_count() const { return entries.at(stable_begin).modal_count; }
};

SweepReport k_sweep(const Dataset& dataset, const std::vector<int>& k_values, int runs_per_k,
                    const KMeansConfig& base);

}  // namespace rkm

#endif  // RKM_RADIUS_MERGE_HPP
