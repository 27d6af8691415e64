#include "rkm/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "rkm/random.hpp"

namespace rkm {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_cells(std::string_view line) {
  std::vector<std::string_view> cells;
  for (;;) {
    const auto comma = line.find(',');
    cells.push_back(trim(line.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return cells;
}

std::optional<double> parse_double(std::string_view cell) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || end != cell.data() + cell.size() || cell.empty()) return std::nullopt;
  return value;
}

std::optional<long long> parse_label(std::string_view cell) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  long long value = 0;
  const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec == std::errc() && end == cell.data() + cell.size() && !cell.empty()) return value;
  // tolerate "2.0"
  if (auto d = parse_double(cell); d && std::isfinite(*d) && *d == std::floor(*d) &&
                                   std::abs(*d) < 9.0e15) {
    return static_cast<long long>(*d);
  }
  return std::nullopt;
}

std::string location(const std::filesystem::path& path, std::size_t row, std::size_t column) {
  return path.string() + ":" + std::to_string(row) + ":" + std::to_string(column) + ": ";
}

}  // namespace

LabeledDataset load_csv(const std::filesystem::path& path, bool has_header,
                        std::optional<int> label_column) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());

  std::vector<double> values;
  std::vector<long long> labels;
  std::size_t width = 0;
  std::size_t rows = 0;
  std::size_t label_index = 0;
  std::string line;
  std::size_t line_no = 0;
  bool header_pending = has_header;

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    const auto cells = split_cells(line);
    if (width == 0) {
      width = cells.size();
      if (label_column) {
        const int w = static_cast<int>(width);
        const int idx = *label_column < 0 ? w + *label_column : *label_column;
        if (idx < 0 || idx >= w) {
          throw ParseError(location(path, line_no, 1) + "label column " +
                               std::to_string(*label_column) + " outside a " + std::to_string(w) +
                               "-column row",
                           line_no, 1);
        }
        label_index = static_cast<std::size_t>(idx);
      }
      if (width == (label_column ? 1u : 0u)) {
        throw ParseError(location(path, line_no, 1) + "no coordinate columns", line_no, 1);
      }
    } else if (cells.size() != width) {
      throw ParseError(location(path, line_no, cells.size()) + "expected " + std::to_string(width) +
                           " columns, found " + std::to_string(cells.size()),
                       line_no, cells.size());
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (label_column && c == label_index) {
        auto label = parse_label(cells[c]);
        if (!label) {
          throw ParseError(location(path, line_no, c + 1) + "label '" + std::string(cells[c]) +
                               "' is not an integer",
                           line_no, c + 1);
        }
        labels.push_back(*label);
        continue;
      }
      auto value = parse_double(cells[c]);
      if (!value || !std::isfinite(*value)) {
        throw ParseError(location(path, line_no, c + 1) + "'" + std::string(cells[c]) +
                             "' is not a finite number",
                         line_no, c + 1);
      }
      values.push_back(*value);
    }
    ++rows;
  }
  if (rows == 0) throw ParseError(path.string() + ": no data rows");

  const auto d = static_cast<Eigen::Index>(width - (label_column ? 1 : 0));
  Points points = Eigen::Map<const Points>(values.data(), static_cast<Eigen::Index>(rows), d);
  LabeledDataset out{Dataset(std::move(points)), std::nullopt, {}, path.stem().string()};
  if (label_column) {
    std::map<long long, int> dense;
    for (auto l : labels) dense.emplace(l, 0);
    int next = 0;
    for (auto& [value, id] : dense) id = next++;
    LabelVector truth;
    truth.reserve(labels.size());
    for (auto l : labels) truth.push_back(dense.at(l));
    out.truth = std::move(truth);
    out.truth_values = std::move(labels);
  }
  return out;
}

bool csv_has_header(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    for (auto cell : split_cells(line)) {
      if (!parse_double(cell)) return true;
    }
    return false;
  }
  return false;
}

void write_points_csv(std::ostream& out, const Dataset& dataset,
                      const std::optional<LabelVector>& labels) {
  for (Eigen::Index a = 0; a < dataset.dim(); ++a) out << (a ? "," : "") << "x" << a + 1;
  if (labels) out << ",label";
  out << "\n";
  char buf[40];
  for (Eigen::Index i = 0; i < dataset.size(); ++i) {
    for (Eigen::Index a = 0; a < dataset.dim(); ++a) {
      std::snprintf(buf, sizeof buf, "%.17g", dataset.points()(i, a));
      out << (a ? "," : "") << buf;
    }
    if (labels) out << "," << (*labels)[static_cast<std::size_t>(i)];
    out << "\n";
  }
}

void write_labels_csv(std::ostream& out, const LabelVector& labels) {
  out << "point,label\n";
  for (std::size_t i = 0; i < labels.size(); ++i) out << i << "," << labels[i] << "\n";
}

LabeledDataset gen_two_circles(int n_per_ring, double inner_radius, double outer_radius,
                               double jitter, std::uint64_t seed) {
  if (n_per_ring < 1) throw std::invalid_argument("gen_two_circles: n_per_ring must be positive");
  if (!(inner_radius > 0.0 && inner_radius < outer_radius)) {
    throw std::invalid_argument("gen_two_circles: need 0 < inner_radius < outer_radius");
  }
  if (!(jitter >= 0.0)) throw std::invalid_argument("gen_two_circles: jitter must be >= 0");

  Rng rng(seed);
  Points points(2 * n_per_ring, 2);
  LabelVector truth(2 * static_cast<std::size_t>(n_per_ring));
  const double radius[2] = {inner_radius, outer_radius};
  for (int ring = 0; ring < 2; ++ring) {
    for (int i = 0; i < n_per_ring; ++i) {
      const double angle = 2.0 * std::numbers::pi * i / n_per_ring;
      const double r = radius[ring] + (jitter > 0.0 ? jitter * rng.normal() : 0.0);
      const int row = ring * n_per_ring + i;
      points(row, 0) = r * std::cos(angle);
      points(row, 1) = r * std::sin(angle);
      truth[static_cast<std::size_t>(row)] = ring;
    }
  }
  return {Dataset(std::move(points)), truth, {0, 1}, "two-circles"};
}

LabeledDataset gen_two_moons(int n_per_moon, double noise, std::uint64_t seed) {
  if (n_per_moon < 1) throw std::invalid_argument("gen_two_moons: n_per_moon must be positive");
  if (!(noise >= 0.0)) throw std::invalid_argument("gen_two_moons: noise must be >= 0");

  Rng rng(seed);
  Points points(2 * n_per_moon, 2);
  LabelVector truth(2 * static_cast<std::size_t>(n_per_moon));
  for (int i = 0; i < n_per_moon; ++i) {
    const double t = n_per_moon == 1 ? 0.0 : std::numbers::pi * i / (n_per_moon - 1);
    points(i, 0) = std::cos(t);
    points(i, 1) = std::sin(t);
    points(n_per_moon + i, 0) = 1.0 - std::cos(t);
    points(n_per_moon + i, 1) = 0.5 - std::sin(t);
    truth[static_cast<std::size_t>(i)] = 0;
    truth[static_cast<std::size_t>(n_per_moon + i)] = 1;
  }
  if (noise > 0.0) {
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
      points(i, 0) += noise * rng.normal();
      points(i, 1) += noise * rng.normal();
    }
  }
  return {Dataset(std::move(points)), truth, {0, 1}, "two-moons"};
}

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
                                    "#393b79", "#637939", "#8c6d31", "#843c39", "#7b4173",
                                    "#3182bd", "#e6550d", "#31a354", "#756bb1", "#636363"};

const char* label_color(int label) {
  if (label < 0) return "#b0b0b0";
  return kPalette[static_cast<std::size_t>(label) % std::size(kPalette)];
}

}  // namespace

void render_svg(std::ostream& out, const Dataset& dataset, const LabelVector& labels,
                const std::vector<Circle>& circles) {
  if (labels.size() != static_cast<std::size_t>(dataset.size())) {
    throw ContractViolation("render_svg: label count does not match dataset");
  }
  const auto& x = dataset.points();
  const Eigen::Index ycol = dataset.dim() > 1 ? 1 : 0;

  double min_x = x.col(0).minCoeff(), max_x = x.col(0).maxCoeff();
  double min_y = x.col(ycol).minCoeff(), max_y = x.col(ycol).maxCoeff();
  for (const auto& c : circles) {
    min_x = std::min(min_x, c.center[0] - c.radius);
    max_x = std::max(max_x, c.center[0] + c.radius);
    min_y = std::min(min_y, c.center[ycol] - c.radius);
    max_y = std::max(max_y, c.center[ycol] + c.radius);
  }
  double span = std::max(max_x - min_x, max_y - min_y);
  if (!(span > 0.0)) span = 1.0;
  const double margin = 0.05 * span;
  const double size = 800.0;
  const double scale = size / (span + 2.0 * margin);
  auto sx = [&](double v) { return (v - min_x + margin) * scale; };
  auto sy = [&](double v) { return size - (v - min_y + margin) * scale; };

  char buf[256];
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"800\" "
         "viewBox=\"0 0 800 800\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"800\" fill=\"white\"/>\n"
      << "<g id=\"points\">\n";
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"3\" fill=\"%s\"/>\n",
                  sx(x(i, 0)), sy(x(i, ycol)), label_color(labels[static_cast<std::size_t>(i)]));
    out << buf;
  }
  out << "</g>\n<g id=\"radii\" fill=\"none\" stroke=\"black\" stroke-width=\"1\">\n";
  for (const auto& c : circles) {
    const double r = c.radius * scale;
    if (r > 0.0) {
      std::snprintf(buf, sizeof buf, "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"%.3f\"/>\n",
                    sx(c.center[0]), sy(c.center[ycol]), r);
    } else {
      // zero radius: small dashed marker so the center stays visible
      std::snprintf(buf, sizeof buf,
                    "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"5\" stroke-dasharray=\"2,2\"/>\n",
                    sx(c.center[0]), sy(c.center[ycol]));
    }
    out << buf;
  }
  out << "</g>\n</svg>\n";
}

void render_svg(const std::filesystem::path& path, const Dataset& dataset,
                const LabelVector& labels, const std::vector<Circle>& circles) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  render_svg(out, dataset, labels, circles);
  if (!out.flush()) throw IoError("failed writing " + path.string());
}

}  // namespace rkm
