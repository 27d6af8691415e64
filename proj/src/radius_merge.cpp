#include "rkm/radius_merge.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "rkm/disjoint_set.hpp"
#include "rkm/eval.hpp"

namespace rkm {

Radii compute_radii(const Dataset& dataset, const Points& centers, const LabelVector& labels) {
  if (labels.size() != static_cast<std::size_t>(dataset.size())) {
    throw ContractViolation("compute_radii: label count does not match dataset");
  }
  const auto k = centers.rows();
  Radii radii = Radii::Constant(k, -1.0);
  for (Eigen::Index i = 0; i < dataset.size(); ++i) {
    const int label = labels[static_cast<std::size_t>(i)];
    if (label < 0) continue;
    if (label >= k) {
      throw ContractViolation("compute_radii: label " + std::to_string(label) + " has no center");
    }
    radii[label] = std::max(radii[label], euclidean_distance(dataset.point(i), centers.row(label)));
  }
  for (Eigen::Index j = 0; j < k; ++j) {
    if (radii[j] < 0.0) {
      throw ContractViolation("compute_radii: cluster " + std::to_string(j) + " has no members");
    }
  }
  return radii;
}

MergeGraph build_adjacency(const Points& centers, const Radii& radii) {
  if (centers.rows() != radii.size()) {
    throw ContractViolation("build_adjacency: center and radius counts differ");
  }
  MergeGraph graph;
  graph.node_count = static_cast<int>(centers.rows());
  for (int i = 0; i < graph.node_count; ++i) {
    for (int j = i + 1; j < graph.node_count; ++j) {
      if (overlap(centers.row(i), radii[i], centers.row(j), radii[j])) graph.edges.emplace_back(i, j);
    }
  }
  return graph;
}

MergeGraph build_adjacency(const std::vector<Circle>& circles) {
  MergeGraph graph;
  graph.node_count = static_cast<int>(circles.size());
  for (int i = 0; i < graph.node_count; ++i) {
    for (int j = i + 1; j < graph.node_count; ++j) {
      if (overlap(circles[static_cast<std::size_t>(i)], circles[static_cast<std::size_t>(j)])) {
        graph.edges.emplace_back(i, j);
      }
    }
  }
  return graph;
}

Components connected_components(const MergeGraph& graph) {
  DisjointSet sets(graph.node_count);
  for (const auto& [a, b] : graph.edges) {
    if (a < 0 || b < 0 || a >= graph.node_count || b >= graph.node_count || a == b) {
      throw ContractViolation("connected_components: invalid edge (" + std::to_string(a) + ", " +
                              std::to_string(b) + ")");
    }
    sets.unite(a, b);
  }
  Components out;
  out.component_of = sets.dense_labels(&out.count);
  return out;
}

FilteredModel filter_zero_radius(const ClusterModel& model) {
  const auto k = model.cluster_count();
  if (model.radii.size() != k || model.sizes.size() != static_cast<std::size_t>(k)) {
    throw ContractViolation("filter_zero_radius: model radii or sizes missing");
  }
  FilteredModel out;
  std::vector<int> remap(static_cast<std::size_t>(k), kOutlier);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < k; ++j) {
    const bool isolated = model.radii[j] == 0.0 && model.sizes[static_cast<std::size_t>(j)] == 1;
    if (isolated) continue;
    remap[static_cast<std::size_t>(j)] = static_cast<int>(keep.size());
    out.original_id.push_back(static_cast<int>(j));
    keep.push_back(j);
  }

  out.model.centers = Points(model.centers(keep, Eigen::all));
  out.model.radii = model.radii(keep);
  out.model.inertia = model.inertia;
  for (auto j : keep) out.model.sizes.push_back(model.sizes[static_cast<std::size_t>(j)]);
  out.model.labels.resize(model.labels.size());
  for (std::size_t i = 0; i < model.labels.size(); ++i) {
    const int label = model.labels[i];
    const int mapped = label < 0 ? kOutlier : remap[static_cast<std::size_t>(label)];
    out.model.labels[i] = mapped;
    if (label >= 0 && mapped == kOutlier) out.outliers.push_back(static_cast<Eigen::Index>(i));
  }
  return out;
}

MergedPartition merge_clusters(const ClusterModel& model, bool filter_outliers) {
  const auto k = model.cluster_count();
  if (model.radii.size() != k) throw ContractViolation("merge_clusters: model has no radii");

  FilteredModel filtered;
  if (filter_outliers) {
    filtered = filter_zero_radius(model);
  } else {
    filtered.model = model;
    filtered.original_id.resize(static_cast<std::size_t>(k));
    std::iota(filtered.original_id.begin(), filtered.original_id.end(), 0);
  }
  const ClusterModel& kept = filtered.model;

  const auto components = connected_components(build_adjacency(kept.centers, kept.radii));

  MergedPartition out;
  out.component_count = components.count;
  out.outliers = std::move(filtered.outliers);
  out.component_of.assign(static_cast<std::size_t>(k), kOutlier);
  out.member_circles.resize(static_cast<std::size_t>(components.count));
  for (std::size_t j = 0; j < filtered.original_id.size(); ++j) {
    const int component = components.component_of[j];
    out.component_of[static_cast<std::size_t>(filtered.original_id[j])] = component;
    const auto row = static_cast<Eigen::Index>(j);
    const std::size_t size = j < kept.sizes.size() ? kept.sizes[j] : 0;
    out.member_circles[static_cast<std::size_t>(component)].push_back(
        Circle{kept.centers.row(row), kept.radii[row], size});
  }

  out.final_labels.resize(model.labels.size());
  for (std::size_t i = 0; i < model.labels.size(); ++i) {
    const int label = model.labels[i];
    out.final_labels[i] = label < 0 ? kOutlier : out.component_of[static_cast<std::size_t>(label)];
  }
  return out;
}

MergedPartition fit_and_merge(const Dataset& dataset, const KMeansConfig& config,
                              bool filter_outliers) {
  return merge_clusters(fit_kmeans(dataset, config), filter_outliers);
}

SweepReport k_sweep(const Dataset& dataset, const std::vector<int>& k_values, int runs_per_k,
                    const KMeansConfig& base) {
  if (k_values.empty()) throw std::invalid_argument("k_sweep: empty k list");
  if (runs_per_k < 1) throw std::invalid_argument("k_sweep: runs_per_k must be positive");
  for (std::size_t i = 0; i < k_values.size(); ++i) {
    if (k_values[i] < 1 || k_values[i] > dataset.size()) {
      throw std::invalid_argument("k_sweep: k=" + std::to_string(k_values[i]) + " outside [1, n]");
    }
    if (i > 0 && k_values[i] <= k_values[i - 1]) {
      throw std::invalid_argument("k_sweep: k values must be strictly increasing");
    }
  }

  SweepReport report;
  for (std::size_t ki = 0; ki < k_values.size(); ++ki) {
    SweepEntry entry;
    entry.k = k_values[ki];
    std::vector<LabelVector> runs;
    for (int r = 0; r < runs_per_k; ++r) {
      KMeansConfig config = base;
      config.k = entry.k;
      config.seed = derive_seed(base.seed, ki, static_cast<std::uint64_t>(r));
      auto merged = fit_and_merge(dataset, config);
      entry.component_counts.push_back(merged.component_count);
      runs.push_back(std::move(merged.final_labels));
    }

    // modal count, smallest on ties
    std::map<int, int> frequency;
    for (int c : entry.component_counts) ++frequency[c];
    int best = 0;
    for (const auto& [count, times] : frequency) {
      if (times > best) {
        best = times;
        entry.modal_count = count;
      }
    }

    if (runs.size() > 1) {
      double total = 0.0;
      std::size_t pairs = 0;
      for (std::size_t a = 0; a < runs.size(); ++a) {
        for (std::size_t b = a + 1; b < runs.size(); ++b) {
          total += success_score(runs[a], runs[b]);
          ++pairs;
        }
      }
      entry.mean_agreement = total / static_cast<double>(pairs);
    }
    report.entries.push_back(std::move(entry));
  }

  std::size_t run_begin = 0;
  for (std::size_t i = 1; i <= report.entries.size(); ++i) {
    const bool breaks = i == report.entries.size() ||
                        report.entries[i].modal_count != report.entries[run_begin].modal_count;
    if (!breaks) continue;
    if (i - run_begin > report.stable_end - report.stable_begin) {
      report.stable_begin = run_begin;
      report.stable_end = i;
    }
    run_begin = i;
  }
  return report;
}

}  // namespace rkm
