#include "rkm/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "rkm/disjoint_set.hpp"
#include "rkm/parallel.hpp"

namespace rkm {

TileGrid::TileGrid(std::vector<int> splits, std::vector<std::vector<double>> walls)
    : splits_(std::move(splits)), walls_(std::move(walls)) {
  if (splits_.size() != walls_.size() || splits_.empty()) {
    throw ContractViolation("TileGrid: splits and walls must cover every axis");
  }
  int count = 1;
  for (std::size_t a = 0; a < splits_.size(); ++a) {
    if (splits_[a] < 1 || walls_[a].size() != static_cast<std::size_t>(splits_[a]) + 1) {
      throw ContractViolation("TileGrid: axis " + std::to_string(a) + " is malformed");
    }
    count *= splits_[a];
  }

  const auto d = static_cast<Eigen::Index>(splits_.size());
  bounds_.reserve(static_cast<std::size_t>(count));
  std::vector<int> index(splits_.size(), 0);
  for (int t = 0; t < count; ++t) {
    int rest = t;
    for (std::size_t a = splits_.size(); a-- > 0;) {
      index[a] = rest % splits_[a];
      rest /= splits_[a];
    }
    Box box{Point(d), Point(d)};
    for (std::size_t a = 0; a < splits_.size(); ++a) {
      box.lower[static_cast<Eigen::Index>(a)] = walls_[a][static_cast<std::size_t>(index[a])];
      box.upper[static_cast<Eigen::Index>(a)] = walls_[a][static_cast<std::size_t>(index[a]) + 1];
    }
    bounds_.push_back(std::move(box));
  }
}

int TileGrid::axis_index(std::size_t axis, double value) const {
  const auto& w = walls_[axis];
  // interior walls are w[1] .. w[splits-1]
  const auto interior_end = w.end() - 1;
  return static_cast<int>(std::upper_bound(w.begin() + 1, interior_end, value) - (w.begin() + 1));
}

std::vector<std::vector<Eigen::Index>> TileGrid::partition(const Dataset& dataset) const {
  if (dataset.dim() != static_cast<Eigen::Index>(splits_.size())) {
    throw ContractViolation("TileGrid::partition: dataset dimension does not match grid");
  }
  std::vector<std::vector<Eigen::Index>> tiles(static_cast<std::size_t>(tile_count()));
  for (Eigen::Index i = 0; i < dataset.size(); ++i) {
    tiles[static_cast<std::size_t>(tile_of(dataset.point(i)))].push_back(i);
  }
  return tiles;
}

TileGrid build_grid(const Dataset& dataset, const std::vector<int>& splits_per_axis) {
  const auto d = static_cast<std::size_t>(dataset.dim());
  if (splits_per_axis.size() > d) {
    throw std::invalid_argument("build_grid: " + std::to_string(splits_per_axis.size()) +
                                " split counts for a " + std::to_string(d) + "-d dataset");
  }
  std::vector<int> splits(splits_per_axis);
  splits.resize(d, 1);

  const Point lo = dataset.points().colwise().minCoeff();
  const Point hi = dataset.points().colwise().maxCoeff();
  std::vector<std::vector<double>> walls(d);
  for (std::size_t a = 0; a < d; ++a) {
    const int s = splits[a];
    if (s < 1) throw std::invalid_argument("build_grid: split count must be >= 1");
    const double low = lo[static_cast<Eigen::Index>(a)];
    const double high = hi[static_cast<Eigen::Index>(a)];
    if (s > 1 && !(high > low)) {
      throw std::invalid_argument("build_grid: axis " + std::to_string(a) +
                                  " has zero extent and cannot be split");
    }
    walls[a].resize(static_cast<std::size_t>(s) + 1);
    for (int j = 0; j <= s; ++j) {
      walls[a][static_cast<std::size_t>(j)] = low + (high - low) * j / s;
    }
    walls[a].back() = high;
  }
  return TileGrid(std::move(splits), std::move(walls));
}

int local_k(Eigen::Index tile_point_count, double pct) {
  if (!(pct > 0.0 && pct <= 100.0)) {
    throw std::invalid_argument("local_k: pct must be in (0, 100]");
  }
  const auto n = static_cast<double>(tile_point_count);
  const auto k = static_cast<Eigen::Index>(std::ceil(pct * n / 100.0));
  return static_cast<int>(std::max<Eigen::Index>(1, std::min(tile_point_count, k)));
}

bool crosses_boundary(const Circle& circle, const Box& box) {
  for (Eigen::Index a = 0; a < circle.center.size(); ++a) {
    const double c = circle.center[a];
    if (c - box.lower[a] <= circle.radius || box.upper[a] - c <= circle.radius) return true;
  }
  return false;
}

TileResult cluster_tile(const Dataset& tile_points, std::vector<Eigen::Index> point_indices,
                        const Box& bounds, int tile_id, const KMeansConfig& config,
                        bool filter_outliers) {
  if (point_indices.size() != static_cast<std::size_t>(tile_points.size())) {
    throw ContractViolation("cluster_tile: index list does not match tile points");
  }
  TileResult result;
  result.tile_id = tile_id;
  result.bounds = bounds;
  result.point_indices = std::move(point_indices);
  result.local = fit_and_merge(tile_points, config, filter_outliers);

  // member circles are stored in cluster-id order, so walking cluster ids
  // with one cursor per component recovers each cluster's circle
  std::vector<std::size_t> cursor(static_cast<std::size_t>(result.local.component_count), 0);
  for (int comp : result.local.component_of) {
    if (comp == kOutlier) continue;
    const auto& circle =
        result.local.member_circles[static_cast<std::size_t>(comp)][cursor[static_cast<std::size_t>(comp)]++];
    if (crosses_boundary(circle, bounds)) {
      result.boundary_crossers.push_back(static_cast<int>(result.circles.size()));
    }
    result.circles.push_back(circle);
    result.circle_component.push_back(comp);
  }
  return result;
}

namespace {

Box circle_bounds(const std::vector<Circle>& circles) {
  Box box{circles.front().center.array() - circles.front().radius,
          circles.front().center.array() + circles.front().radius};
  for (const auto& c : circles) {
    box.lower = box.lower.cwiseMin((c.center.array() - c.radius).matrix());
    box.upper = box.upper.cwiseMax((c.center.array() + c.radius).matrix());
  }
  return box;
}

bool boxes_disjoint(const Box& a, const Box& b) {
  return ((a.upper.array() < b.lower.array()) || (b.upper.array() < a.lower.array())).any();
}

}  // namespace

MergedPartition global_merge(const std::vector<TileResult>& input, bool prefilter) {
  std::vector<const TileResult*> results;
  for (const auto& r : input) results.push_back(&r);
  std::sort(results.begin(), results.end(),
            [](const TileResult* a, const TileResult* b) { return a->tile_id < b->tile_id; });

  std::size_t n = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (i > 0 && results[i]->tile_id == results[i - 1]->tile_id) {
      throw ContractViolation("global_merge: tile " + std::to_string(results[i]->tile_id) +
                              " appears twice");
    }
    if (results[i]->local.final_labels.size() != results[i]->point_indices.size()) {
      throw ContractViolation("global_merge: tile labels do not match its points");
    }
    n += results[i]->point_indices.size();
  }
  std::vector<bool> covered(n, false);
  for (const auto* r : results) {
    for (auto p : r->point_indices) {
      if (p < 0 || static_cast<std::size_t>(p) >= n || covered[static_cast<std::size_t>(p)]) {
        throw ContractViolation("global_merge: point " + std::to_string(p) +
                                " is duplicated or out of range");
      }
      covered[static_cast<std::size_t>(p)] = true;
    }
  }

  // one node per local component
  std::vector<int> node_offset;
  int node_count = 0;
  for (const auto* r : results) {
    node_offset.push_back(node_count);
    node_count += r->local.component_count;
  }

  struct Node {
    std::size_t tile;
    std::vector<int> circles;  // indices into the tile's circle list
    Box box;
  };
  std::vector<Node> nodes(static_cast<std::size_t>(node_count));
  for (std::size_t t = 0; t < results.size(); ++t) {
    for (int comp = 0; comp < results[t]->local.component_count; ++comp) {
      nodes[static_cast<std::size_t>(node_offset[t] + comp)].tile = t;
    }
    for (std::size_t c = 0; c < results[t]->circles.size(); ++c) {
      nodes[static_cast<std::size_t>(node_offset[t] + results[t]->circle_component[c])]
          .circles.push_back(static_cast<int>(c));
    }
  }
  std::vector<std::vector<bool>> crosser(results.size());
  for (std::size_t t = 0; t < results.size(); ++t) {
    crosser[t].assign(results[t]->circles.size(), false);
    for (int c : results[t]->boundary_crossers) crosser[t][static_cast<std::size_t>(c)] = true;
  }
  if (prefilter) {
    for (auto& node : nodes) {
      std::vector<Circle> members;
      for (int c : node.circles) members.push_back(results[node.tile]->circles[static_cast<std::size_t>(c)]);
      if (!members.empty()) node.box = circle_bounds(members);
    }
  }

  DisjointSet sets(node_count);
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    for (std::size_t b = a + 1; b < nodes.size(); ++b) {
      const Node& na = nodes[a];
      const Node& nb = nodes[b];
      if (na.tile == nb.tile || na.circles.empty() || nb.circles.empty()) continue;
      if (prefilter && boxes_disjoint(na.box, nb.box)) continue;
      bool joined = false;
      for (int ca : na.circles) {
        for (int cb : nb.circles) {
          const bool eligible = crosser[na.tile][static_cast<std::size_t>(ca)] ||
                                crosser[nb.tile][static_cast<std::size_t>(cb)];
          if (eligible && overlap(results[na.tile]->circles[static_cast<std::size_t>(ca)],
                                  results[nb.tile]->circles[static_cast<std::size_t>(cb)])) {
            joined = true;
            break;
          }
        }
        if (joined) break;
      }
      if (joined) sets.unite(static_cast<int>(a), static_cast<int>(b));
    }
  }

  MergedPartition out;
  const auto node_component = sets.dense_labels(&out.component_count);
  out.member_circles.resize(static_cast<std::size_t>(out.component_count));
  out.final_labels.assign(n, kOutlier);
  for (std::size_t t = 0; t < results.size(); ++t) {
    const auto& r = *results[t];
    for (std::size_t c = 0; c < r.circles.size(); ++c) {
      const int component =
          node_component[static_cast<std::size_t>(node_offset[t] + r.circle_component[c])];
      out.component_of.push_back(component);
      out.member_circles[static_cast<std::size_t>(component)].push_back(r.circles[c]);
    }
    for (std::size_t i = 0; i < r.point_indices.size(); ++i) {
      const int local = r.local.final_labels[i];
      const auto p = static_cast<std::size_t>(r.point_indices[i]);
      if (local < 0) {
        out.outliers.push_back(r.point_indices[i]);
      } else {
        out.final_labels[p] = node_component[static_cast<std::size_t>(node_offset[t] + local)];
      }
    }
  }
  std::sort(out.outliers.begin(), out.outliers.end());
  return out;
}

std::uint64_t tile_seed(std::uint64_t base, int tile_id) {
  return base + static_cast<std::uint64_t>(tile_id) * 0x9E3779B97F4A7C15ULL;
}

std::vector<TileResult> cluster_tiles(const Dataset& dataset, const TileGrid& grid, double pct,
                                      const KMeansConfig& config, const TilingOptions& options) {
  auto members = grid.partition(dataset);
  std::vector<int> occupied;
  for (int t = 0; t < grid.tile_count(); ++t) {
    if (!members[static_cast<std::size_t>(t)].empty()) occupied.push_back(t);
  }

  std::vector<TileResult> results(occupied.size());
  parallel_for(occupied.size(), options.threads, [&](std::size_t slot) {
    const int t = occupied[slot];
    auto& indices = members[static_cast<std::size_t>(t)];
    KMeansConfig local = config;
    local.k = local_k(static_cast<Eigen::Index>(indices.size()), pct);
    local.seed = tile_seed(config.seed, t);
    const Dataset points = dataset.subset(indices);
    results[slot] = cluster_tile(points, std::move(indices), grid.bounds(t), t, local,
                                 options.filter_outliers);
  });
  return results;
}

MergedPartition tiled_pipeline(const Dataset& dataset, const std::vector<int>& splits_per_axis,
                               double pct, const KMeansConfig& config,
                               const TilingOptions& options) {
  local_k(1, pct);  // validates pct before any work
  const auto grid = build_grid(dataset, splits_per_axis);
  return global_merge(cluster_tiles(dataset, grid, pct, config, options), options.prefilter);
}

}  // namespace rkm
