#ifndef RKM_IO_HPP
#define RKM_IO_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rkm/core.hpp"
#include "rkm/radius_merge.hpp"

namespace rkm {

/// Malformed input file; the message carries path, 1-based row and column.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t row = 0, std::size_t column = 0)
      : std::runtime_error(message), row_(row), column_(column) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LabeledDataset {
  Dataset dataset;
  /// Dense 0-based ids in ascending order of the file's label values.
  std::optional<LabelVector> truth;
  /// The label values as written in the file.
  std::vector<long long> truth_values;
  std::string name;
};

/// Reads comma-separated numeric rows. `label_column` (0-based, negative
/// counts from the end) names an integer column that becomes the truth
/// labels; every other column is a coordinate.
LabeledDataset load_csv(const std::filesystem::path& path, bool has_header,
                        std::optional<int> label_column = std::nullopt);

/// True when the first non-empty line contains a non-numeric cell.
bool csv_has_header(const std::filesystem::path& path);

/// Coordinates as CSV with 17 significant digits, header x1..xd.
void write_points_csv(std::ostream& out, const Dataset& dataset,
                      const std::optional<LabelVector>& labels = std::nullopt);

/// `point,label` rows.
void write_labels_csv(std::ostream& out, const LabelVector& labels);

/// Two concentric rings, evenly spaced angles, Gaussian radial jitter.
/// Truth is 0 for the inner ring and 1 for the outer.
LabeledDataset gen_two_circles(int n_per_ring, double inner_radius, double outer_radius,
                               double jitter, std::uint64_t seed);

/// Interleaved half circles: upper moon on the unit circle, lower moon
/// shifted by (1, -0.5) and flipped; Gaussian noise on both coordinates.
LabeledDataset gen_two_moons(int n_per_moon, double noise, std::uint64_t seed);

/// Standalone SVG 1.1 scatter of the first two coordinates, colored by label,
/// with an optional stroked circle per (center, radius).
void render_svg(std::ostream& out, const Dataset& dataset, const LabelVector& labels,
                const std::vector<Circle>& circles = {});
void render_svg(const std::filesystem::path& path, const Dataset& dataset,
                const LabelVector& labels, const std::vector<Circle>& circles = {});

}  // namespace rkm

#endif  // RKM_IO_HPP
