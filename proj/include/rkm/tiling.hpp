#ifndef RKM_TILING_HPP
#define RKM_TILING_HPP

#include <vector>

#include "rkm/core.hpp"
#include "rkm/kmeans.hpp"
#include "rkm/radius_merge.hpp"

namespace rkm {

/// Closed axis-aligned box.
struct Box {
  Point lower;
  Point upper;
};

/// Regular grid over the dataset bounding box. Tile ids are row-major over
/// the per-axis indices, axis 0 slowest.
class TileGrid {
 public:
  TileGrid(std::vector<int> splits, std::vector<std::vector<double>> walls);

  /// Splits per axis, one entry per dimension.
  const std::vector<int>& splits() const noexcept { return splits_; }
  int tile_count() const noexcept { return static_cast<int>(bounds_.size()); }
  const Box& bounds(int tile) const { return bounds_.at(static_cast<std::size_t>(tile)); }

  /// Half-open per axis: a coordinate on an interior wall goes to the upper
  /// tile, the maximal edge belongs to the last tile.
  template <typename Derived>
  int tile_of(const Eigen::MatrixBase<Derived>& x) const {
    int id = 0;
    for (std::size_t a = 0; a < splits_.size(); ++a) {
      id = id * splits_[a] + axis_index(a, x[static_cast<Eigen::Index>(a)]);
    }
    return id;
  }

  /// Point indices per tile, ascending.
  std::vector<std::vector<Eigen::Index>> partition(const Dataset& dataset) const;

 private:
  int axis_index(std::size_t axis, double value) const;

  std::vector<int> splits_;
  std::vector<std::vector<double>> walls_;  // splits + 1 wall positions per axis
  std::vector<Box> bounds_;
};

/// Equal-width tiles over the bounding box. Axes beyond `splits_per_axis`
/// get one split.
TileGrid build_grid(const Dataset& dataset, const std::vector<int>& splits_per_axis);

/// max(1, min(count, ceil(pct/100 * count))); pct must be in (0, 100].
int local_k(Eigen::Index tile_point_count, double pct);

/// True when the closed ball around `circle` is not inside the open box,
/// i.e. it reaches or passes some wall.
bool crosses_boundary(const Circle& circle, const Box& box);

struct TileResult {
  int tile_id = 0;
  Box bounds;
  /// Dataset indices of the tile's points; local labels follow this order.
  std::vector<Eigen::Index> point_indices;
  MergedPartition local;
  /// Every kept local k-means circle, in cluster-id order.
  std::vector<Circle> circles;
  std::vector<int> circle_component;
  /// Indices into `circles`.
  std::vector<int> boundary_crossers;
};

TileResult cluster_tile(const Dataset& tile_points, std::vector<Eigen::Index> point_indices,
                        const Box& bounds, int tile_id, const KMeansConfig& config,
                        bool filter_outliers = false);

/// Joins local components of different tiles whenever a boundary-crossing
/// circle of one overlaps any circle of the other. With `prefilter`,
/// component pairs whose circle bounding boxes are disjoint are skipped.
/// Original cluster ids in the result enumerate every tile's circles in
/// tile-id order.
MergedPartition global_merge(const std::vector<TileResult>& results, bool prefilter = true);

struct TilingOptions {
  bool filter_outliers = false;
  bool prefilter = true;
  /// 0 picks hardware concurrency.
  unsigned threads = 1;
};

/// Seed for a tile's k-means run; tile 0 keeps the base seed.
std::uint64_t tile_seed(std::uint64_t base, int tile_id);

MergedPartition tiled_pipeline(const Dataset& dataset, const std::vector<int>& splits_per_axis,
                               double pct, const KMeansConfig& config,
                               const TilingOptions& options = {});

/// Tile results before the global merge, for inspection.
std::vector<TileResult> cluster_tiles(const Dataset& dataset, const TileGrid& grid, double pct,
                                      const KMeansConfig& config, const TilingOptions& options = {});

}  // namespace rkm

#endif  // RKM_TILING_HPP
