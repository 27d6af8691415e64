// rkm: command-line front end for radius-merged k-means.
//
//   rkm fit   --input data.csv --label-column -1 --k 2 --out labels.csv
//   rkm merge --gen two-circles --k 20 --plot fig.svg
//   rkm tile  --input data.csv --splits 2,2 --pct 5
//   rkm sweep --input data.csv --k 2,4,6,8 --runs-per-trial 5
//   rkm bench --suite suites/table2.ini --out table2.csv

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rkm/eval.hpp"
#include "rkm/io.hpp"
#include "rkm/kmeans.hpp"
#include "rkm/radius_merge.hpp"
#include "rkm/suite.hpp"
#include "rkm/tiling.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitData = 3;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputOptions {
  std::string input;
  std::string gen;
  int gen_n = 1500;
  double inner = 0.4;
  double outer = 1.0;
  double jitter = 0.03;
  double noise = 0.05;
  std::optional<int> label_column;
  std::optional<bool> header;

  void add(CLI::App& app) {
    auto* in = app.add_option("--input", input, "CSV file of points (one row per point)");
    auto* g = app.add_option("--gen", gen, "Synthetic input instead of a file")
                  ->check(CLI::IsMember({"two-circles", "two-moons"}));
    in->excludes(g);
    app.add_option("--label-column", label_column,
                   "Column holding ground-truth labels (negative counts from the end)");
    app.add_option("--header", header, "Whether the file has a header row (default: detect)");
    app.add_option("--gen-n", gen_n, "Points per ring/moon for --gen")->capture_default_str();
    app.add_option("--inner", inner, "Inner ring radius for two-circles")->capture_default_str();
    app.add_option("--outer", outer, "Outer ring radius for two-circles")->capture_default_str();
    app.add_option("--jitter", jitter, "Radial jitter for two-circles")->capture_default_str();
    app.add_option("--noise", noise, "Noise for two-moons")->capture_default_str();
  }

  rkm::LabeledDataset load(std::uint64_t seed) const {
    if (input.empty() == gen.empty()) throw UsageError("exactly one of --input or --gen is required");
    if (gen == "two-circles") return rkm::gen_two_circles(gen_n, inner, outer, jitter, seed);
    if (gen == "two-moons") return rkm::gen_two_moons(gen_n, noise, seed);
    const bool has_header = header ? *header : rkm::csv_has_header(input);
    return rkm::load_csv(input, has_header, label_column);
  }
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw rkm::IoError("cannot write " + path);
  out << content;
  if (!out.flush()) throw rkm::IoError("failed writing " + path);
}

std::string labels_csv(const rkm::LabelVector& labels) {
  std::ostringstream out;
  rkm::write_labels_csv(out, labels);
  return out.str();
}

std::pair<std::string, std::string> plot_pair(const std::string& path) {
  fs::path p(path);
  const auto stem = (p.parent_path() / p.stem()).string();
  return {stem + "-pre.svg", stem + "-post.svg"};
}

std::vector<rkm::Circle> model_circles(const rkm::ClusterModel& model) {
  std::vector<rkm::Circle> circles;
  for (Eigen::Index j = 0; j < model.cluster_count(); ++j) {
    circles.push_back({model.centers.row(j), model.radii[j], model.sizes[static_cast<std::size_t>(j)]});
  }
  return circles;
}

std::vector<rkm::Circle> all_circles(const rkm::MergedPartition& merged) {
  std::vector<rkm::Circle> circles;
  for (const auto& group : merged.member_circles) circles.insert(circles.end(), group.begin(), group.end());
  return circles;
}

void print_score(const rkm::LabeledDataset& data, const rkm::LabelVector& labels) {
  if (data.truth) std::printf("success: %.4f\n", rkm::success_score(labels, *data.truth));
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radius-merged k-means clustering"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  int k = 2;
  std::string out_path;
  std::string plot_path;
  bool filter_outliers = false;
  unsigned threads = 1;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "Seed for every random choice")->capture_default_str();
    cmd->add_option("--out", out_path, "Output CSV path");
  };

  InputOptions fit_in, merge_in, tile_in, sweep_in;

  auto* fit = app.add_subcommand("fit", "Plain k-means; writes point,label CSV");
  fit_in.add(*fit);
  add_common(fit);
  fit->add_option("--k", k, "Number of clusters")->capture_default_str();
  fit->add_option("--plot", plot_path, "SVG with points and cluster radii");

  auto* merge = app.add_subcommand("merge", "k-means followed by radius merging");
  merge_in.add(*merge);
  add_common(merge);
  merge->add_option("--k", k, "Number of k-means clusters before merging")->capture_default_str();
  merge->add_flag("--filter-outliers", filter_outliers, "Drop singleton zero-radius clusters first");
  merge->add_option("--plot", plot_path, "SVG path; writes <stem>-pre.svg and <stem>-post.svg");

  std::vector<int> splits{2, 2};
  double pct = 5.0;
  auto* tile = app.add_subcommand("tile", "Tiled clustering with a global cross-tile merge");
  tile_in.add(*tile);
  add_common(tile);
  tile->add_option("--splits", splits, "Splits per axis, e.g. 2,2")->delimiter(',')->capture_default_str();
  tile->add_option("--pct", pct, "Local k as a percentage of tile points")->capture_default_str();
  tile->add_flag("--filter-outliers", filter_outliers, "Drop singleton zero-radius clusters first");
  tile->add_option("--plot", plot_path, "SVG of the merged result with all local circles");
  tile->add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();

  std::vector<int> k_values{2, 4, 6, 8};
  int runs = 5;
  auto* sweep = app.add_subcommand("sweep", "Component counts over a range of k");
  sweep_in.add(*sweep);
  add_common(sweep);
  sweep->add_option("--k", k_values, "Increasing k values, e.g. 2,4,6,8")->delimiter(',')->capture_default_str();
  sweep->add_option("--runs-per-trial", runs, "Seeded runs per k")->capture_default_str();

  std::string suite_path;
  std::optional<int> trials_override, runs_override;
  std::optional<std::uint64_t> seed_override;
  auto* bench = app.add_subcommand("bench", "Run a benchmark suite file");
  bench->add_option("--suite,suite", suite_path, "Suite file")->required();
  bench->add_option("--out", out_path, "Report CSV path");
  bench->add_option("--trials", trials_override, "Override trials for every entry");
  bench->add_option("--runs-per-trial", runs_override, "Override runs per trial");
  bench->add_option("--seed", seed_override, "Override the seed base");
  bench->add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*fit) {
      const auto data = fit_in.load(seed);
      rkm::KMeansConfig config;
      config.k = k;
      config.seed = seed;
      const auto model = rkm::fit_kmeans(data.dataset, config);
      std::printf("dataset: %s (n=%lld, d=%lld)\n", data.name.c_str(),
                  static_cast<long long>(data.dataset.size()), static_cast<long long>(data.dataset.dim()));
      std::printf("clusters: %lld\ninertia: %s\nradii:", static_cast<long long>(model.cluster_count()),
                  fmt(model.inertia).c_str());
      for (Eigen::Index j = 0; j < model.radii.size(); ++j) std::printf(" %s", fmt(model.radii[j]).c_str());
      std::printf("\n");
      print_score(data, model.labels);
      if (!out_path.empty()) write_file(out_path, labels_csv(model.labels));
      if (!plot_path.empty()) rkm::render_svg(fs::path(plot_path), data.dataset, model.labels, model_circles(model));
    } else if (*merge) {
      const auto data = merge_in.load(seed);
      rkm::KMeansConfig config;
      config.k = k;
      config.seed = seed;
      const auto model = rkm::fit_kmeans(data.dataset, config);
      const auto merged = rkm::merge_clusters(model, filter_outliers);
      std::printf("dataset: %s (n=%lld, d=%lld)\n", data.name.c_str(),
                  static_cast<long long>(data.dataset.size()), static_cast<long long>(data.dataset.dim()));
      std::printf("clusters: %lld\ncomponents: %d\n", static_cast<long long>(model.cluster_count()),
                  merged.component_count);
      std::printf("outliers:");
      for (auto p : merged.outliers) std::printf(" %lld", static_cast<long long>(p));
      std::printf("%s\n", merged.outliers.empty() ? " none" : "");
      print_score(data, merged.final_labels);
      if (!out_path.empty()) write_file(out_path, labels_csv(merged.final_labels));
      if (!plot_path.empty()) {
        const auto [pre, post] = plot_pair(plot_path);
        rkm::render_svg(fs::path(pre), data.dataset, model.labels, model_circles(model));
        rkm::render_svg(fs::path(post), data.dataset, merged.final_labels, all_circles(merged));
      }
    } else if (*tile) {
      const auto data = tile_in.load(seed);
      rkm::KMeansConfig config;
      config.seed = seed;
      rkm::TilingOptions options;
      options.filter_outliers = filter_outliers;
      options.threads = threads;
      const auto merged = rkm::tiled_pipeline(data.dataset, splits, pct, config, options);
      std::printf("dataset: %s (n=%lld, d=%lld)\n", data.name.c_str(),
                  static_cast<long long>(data.dataset.size()), static_cast<long long>(data.dataset.dim()));
      std::printf("local circles: %zu\ncomponents: %d\n", merged.component_of.size(), merged.component_count);
      print_score(data, merged.final_labels);
      if (!out_path.empty()) write_file(out_path, labels_csv(merged.final_labels));
      if (!plot_path.empty()) rkm::render_svg(fs::path(plot_path), data.dataset, merged.final_labels, all_circles(merged));
    } else if (*sweep) {
      const auto data = sweep_in.load(seed);
      rkm::KMeansConfig base;
      base.seed = seed;
      const auto report = rkm::k_sweep(data.dataset, k_values, runs, base);
      std::ostringstream csv;
      csv << "k,modal_components,mean_agreement,component_counts,stable\n";
      std::printf("%6s  %10s  %9s  %s\n", "k", "components", "agreement", "counts");
      for (std::size_t i = 0; i < report.entries.size(); ++i) {
        const auto& e = report.entries[i];
        std::string counts;
        for (std::size_t r = 0; r < e.component_counts.size(); ++r) {
          counts += (r ? " " : "") + std::to_string(e.component_counts[r]);
        }
        const bool stable = i >= report.stable_begin && i < report.stable_end;
        std::printf("%6d  %10d  %9.4f  %s%s\n", e.k, e.modal_count, e.mean_agreement, counts.c_str(),
                    stable ? "  *" : "");
        char agreement[32];
        std::snprintf(agreement, sizeof agreement, "%.4f", e.mean_agreement);
        csv << e.k << "," << e.modal_count << "," << agreement << "," << counts << "," << (stable ? 1 : 0) << "\n";
      }
      std::printf("stable phase: k=%d..%d with %d components\n", report.entries[report.stable_begin].k,
                  report.entries[report.stable_end - 1].k, report.stable_count());
      if (!out_path.empty()) write_file(out_path, csv.str());
    } else if (*bench) {
      auto entries = rkm::parse_suite(fs::path(suite_path));
      std::vector<rkm::ExperimentReport> reports;
      for (auto& e : entries) {
        if (trials_override) e.trials = *trials_override;
        if (runs_override) e.runs_per_trial = *runs_override;
        if (seed_override) e.seed = *seed_override;
        const auto data = rkm::load_csv(e.file, rkm::csv_has_header(e.file), e.label_column);
        if (!data.truth) throw rkm::ParseError(e.file.string() + ": no label column");
        reports.push_back(rkm::run_experiment(e.name, data.dataset, *data.truth, e.spec, e.trials,
                                              e.runs_per_trial, e.seed, threads));
        std::fprintf(stderr, "%s: median %.4f\n", e.name.c_str(), reports.back().median);
      }
      std::fputs(rkm::format_table(reports).c_str(), stdout);
      if (!out_path.empty()) write_file(out_path, rkm::format_csv(reports));
    }
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const rkm::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitData;
  } catch (const rkm::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitData;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
