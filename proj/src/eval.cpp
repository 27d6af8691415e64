#include "rkm/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "rkm/parallel.hpp"
#include "rkm/radius_merge.hpp"
#include "rkm/tiling.hpp"

namespace rkm {

std::vector<int> max_weight_assignment(const Eigen::MatrixXd& weights) {
  const auto rows = static_cast<int>(weights.rows());
  const auto cols = static_cast<int>(weights.cols());
  const int m = std::max(rows, cols);
  if (m == 0) return {};

  // Square min-cost problem on -weights, padded with zeros. Shortest
  // augmenting path with potentials, 1-based as in the textbook form.
  auto cost = [&](int i, int j) {
    return (i < rows && j < cols) ? -weights(i, j) : 0.0;
  };
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(static_cast<std::size_t>(m) + 1, 0.0), v(u);
  std::vector<int> match(static_cast<std::size_t>(m) + 1, 0), way(match);
  for (int i = 1; i <= m; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(static_cast<std::size_t>(m) + 1, inf);
    std::vector<bool> used(static_cast<std::size_t>(m) + 1, false);
    do {
      used[static_cast<std::size_t>(j0)] = true;
      const int i0 = match[static_cast<std::size_t>(j0)];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= m; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[static_cast<std::size_t>(i0)] - v[static_cast<std::size_t>(j)];
        if (cur < minv[static_cast<std::size_t>(j)]) {
          minv[static_cast<std::size_t>(j)] = cur;
          way[static_cast<std::size_t>(j)] = j0;
        }
        if (minv[static_cast<std::size_t>(j)] < delta) {
          delta = minv[static_cast<std::size_t>(j)];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[static_cast<std::size_t>(j)]) {
          u[static_cast<std::size_t>(match[static_cast<std::size_t>(j)])] += delta;
          v[static_cast<std::size_t>(j)] -= delta;
        } else {
          minv[static_cast<std::size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (match[static_cast<std::size_t>(j0)] != 0);
    do {
      const int j1 = way[static_cast<std::size_t>(j0)];
      match[static_cast<std::size_t>(j0)] = match[static_cast<std::size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> row_to_col(static_cast<std::size_t>(rows), -1);
  for (int j = 1; j <= m; ++j) {
    const int i = match[static_cast<std::size_t>(j)] - 1;
    if (i < rows && j - 1 < cols) row_to_col[static_cast<std::size_t>(i)] = j - 1;
  }
  return row_to_col;
}

namespace {

std::map<int, int> dense_ids(const LabelVector& labels, bool skip_outliers) {
  std::map<int, int> ids;
  for (int l : labels) {
    if (skip_outliers && l == kOutlier) continue;
    ids.emplace(l, 0);
  }
  int next = 0;
  for (auto& [label, id] : ids) id = next++;
  return ids;
}

}  // namespace

double success_score(const LabelVector& predicted, const LabelVector& truth) {
  if (predicted.size() != truth.size()) {
    throw ContractViolation("success_score: " + std::to_string(predicted.size()) +
                            " predicted labels vs " + std::to_string(truth.size()) + " true labels");
  }
  if (predicted.empty()) throw ContractViolation("success_score: empty label vectors");

  const auto pred_ids = dense_ids(predicted, true);
  const auto true_ids = dense_ids(truth, false);
  Eigen::MatrixXd confusion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(pred_ids.size()),
                                                    static_cast<Eigen::Index>(true_ids.size()));
  double outliers_matched = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (predicted[i] == kOutlier) {
      if (truth[i] == kOutlier) outliers_matched += 1.0;
      continue;
    }
    confusion(pred_ids.at(predicted[i]), true_ids.at(truth[i])) += 1.0;
  }

  double matched = outliers_matched;
  const auto assignment = max_weight_assignment(confusion);
  for (std::size_t r = 0; r < assignment.size(); ++r) {
    if (assignment[r] >= 0) matched += confusion(static_cast<Eigen::Index>(r), assignment[r]);
  }
  return matched / static_cast<double>(predicted.size());
}

MedianIqr median_iqr(std::vector<double> scores) {
  if (scores.empty()) throw std::invalid_argument("median_iqr: empty score list");
  std::sort(scores.begin(), scores.end());
  auto quantile = [&](double p) {
    const double pos = p * static_cast<double>(scores.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, scores.size() - 1);
    return scores[lo] + (pos - static_cast<double>(lo)) * (scores[hi] - scores[lo]);
  };
  return {quantile(0.5), quantile(0.75) - quantile(0.25)};
}

PipelineSpec PipelineSpec::plain(int k) {
  PipelineSpec spec;
  spec.mode = Mode::kmeans;
  spec.k = k;
  return spec;
}

PipelineSpec PipelineSpec::merged(int k, bool filter_outliers) {
  PipelineSpec spec;
  spec.mode = Mode::merge;
  spec.k = k;
  spec.filter_outliers = filter_outliers;
  return spec;
}

PipelineSpec PipelineSpec::tiled(double pct, std::vector<int> splits) {
  PipelineSpec spec;
  spec.mode = Mode::tiled;
  spec.pct = pct;
  spec.splits = std::move(splits);
  return spec;
}

std::string PipelineSpec::describe() const {
  std::ostringstream out;
  switch (mode) {
    case Mode::kmeans:
      out << "kmeans k=" << k;
      break;
    case Mode::merge:
      out << "merge k=" << k;
      break;
    case Mode::tiled: {
      out << "tiled pct=" << pct << " splits=";
      for (std::size_t i = 0; i < splits.size(); ++i) out << (i ? "x" : "") << splits[i];
      break;
    }
  }
  if (filter_outliers) out << " filter";
  return out.str();
}

LabelVector run_pipeline(const Dataset& dataset, const PipelineSpec& spec, std::uint64_t seed,
                         unsigned threads) {
  KMeansConfig config;
  config.k = spec.k;
  config.max_iters = spec.max_iters;
  config.tol = spec.tol;
  config.seed = seed;
  switch (spec.mode) {
    case PipelineSpec::Mode::kmeans:
      return fit_kmeans(dataset, config).labels;
    case PipelineSpec::Mode::merge:
      return fit_and_merge(dataset, config, spec.filter_outliers).final_labels;
    case PipelineSpec::Mode::tiled: {
      TilingOptions options;
      options.filter_outliers = spec.filter_outliers;
      options.threads = threads;
      return tiled_pipeline(dataset, spec.splits, spec.pct, config, options).final_labels;
    }
  }
  throw std::logic_error("run_pipeline: unknown mode");
}

ExperimentReport run_experiment(const std::string& name, const Dataset& dataset,
                                const LabelVector& truth, const PipelineSpec& spec, int trials,
                                int runs_per_trial, std::uint64_t seed_base, unsigned threads) {
  if (trials < 1 || runs_per_trial < 1) {
    throw std::invalid_argument("run_experiment: trials and runs_per_trial must be positive");
  }
  if (truth.size() != static_cast<std::size_t>(dataset.size())) {
    throw std::invalid_argument("run_experiment: truth length does not match dataset");
  }

  ExperimentReport report;
  report.dataset = name;
  report.spec = spec;
  report.trials = trials;
  report.runs_per_trial = runs_per_trial;
  report.seed_base = seed_base;
  report.trial_scores.assign(static_cast<std::size_t>(trials), 0.0);

  parallel_for(static_cast<std::size_t>(trials), threads, [&](std::size_t t) {
    double best = 0.0;
    for (int r = 0; r < runs_per_trial; ++r) {
      const auto seed = derive_seed(seed_base, t, static_cast<std::uint64_t>(r));
      best = std::max(best, success_score(run_pipeline(dataset, spec, seed), truth));
    }
    report.trial_scores[t] = best;
  });

  const auto stats = median_iqr(report.trial_scores);
  report.median = stats.median;
  report.iqr = stats.iqr;
  return report;
}

namespace {

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

std::string format_table(const std::vector<ExperimentReport>& reports) {
  std::size_t name_w = 7, spec_w = 4;
  for (const auto& r : reports) {
    name_w = std::max(name_w, r.dataset.size());
    spec_w = std::max(spec_w, r.spec.describe().size());
  }
  auto pad = [](std::string s, std::size_t w) {
    s.resize(std::max(w, s.size()), ' ');
    return s;
  };
  std::ostringstream out;
  out << pad("dataset", name_w) << "  " << pad("spec", spec_w) << "  median  iqr     trials\n";
  for (const auto& r : reports) {
    out << pad(r.dataset, name_w) << "  " << pad(r.spec.describe(), spec_w) << "  "
        << fixed4(r.median) << "  " << fixed4(r.iqr) << "  " << r.trials << "x" << r.runs_per_trial
        << "\n";
  }
  return out.str();
}

std::string format_csv(const std::vector<ExperimentReport>& reports) {
  std::ostringstream out;
  out << "dataset,spec,median,iqr,trials\n";
  for (const auto& r : reports) {
    out << r.dataset << "," << r.spec.describe() << "," << fixed4(r.median) << "," << fixed4(r.iqr)
        << "," << r.trials << "\n";
  }
  return out.str();
}

}  // namespace rkm
