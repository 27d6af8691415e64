#ifndef RKM_EVAL_HPP
#define RKM_EVAL_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rkm/core.hpp"
#include "rkm/kmeans.hpp"

namespace rkm {

/// Maximum-weight one-to-one assignment (Hungarian method). Returns, for each
/// row, the matched column or -1 when the row is left unmatched (more rows
/// than columns).
std::vector<int> max_weight_assignment(const Eigen::MatrixXd& weights);

/// Fraction of points whose predicted label matches the truth under the best
/// one-to-one relabelling. A point predicted as kOutlier only counts when its
/// true label is kOutlier too.
double success_score(const LabelVector& predicted, const LabelVector& truth);

struct MedianIqr {
  double median = 0.0;
  double iqr = 0.0;
};

/// Quartiles interpolate linearly between order statistics (position
/// p * (n - 1) in the sorted list).
MedianIqr median_iqr(std::vector<double> scores);

struct PipelineSpec {
  enum class Mode { kmeans, merge, tiled };

  Mode mode = Mode::merge;
  int k = 2;
  double pct = 5.0;
  std::vector<int> splits;
  bool filter_outliers = false;
  int max_iters = 300;
  double tol = 1e-4;

  static PipelineSpec plain(int k);
  static PipelineSpec merged(int k, bool filter_outliers = false);
  static PipelineSpec tiled(double pct, std::vector<int> splits);

  /// Short form used in reports, e.g. "merge k=20" or "tiled pct=5 splits=2x2".
  std::string describe() const;
};

/// One pipeline run; returns per-point labels.
LabelVector run_pipeline(const Dataset& dataset, const PipelineSpec& spec, std::uint64_t seed,
                         unsigned threads = 1);

struct ExperimentReport {
  std::string dataset;
  PipelineSpec spec;
  int trials = 0;
  int runs_per_trial = 0;
  std::uint64_t seed_base = 0;
  std::vector<double> trial_scores;
  double median = 0.0;
  double iqr = 0.0;
};

/// Each trial keeps the best success_score over `runs_per_trial` seeded runs.
/// Run r of trial t uses derive_seed(seed_base, t, r).
ExperimentReport run_experiment(const std::string& name, const Dataset& dataset,
                                const LabelVector& truth, const PipelineSpec& spec,
                                int trials = 100, int runs_per_trial = 5,
                                std::uint64_t seed_base = 0, unsigned threads = 1);

/// Aligned plain-text table.
std::string format_table(const std::vector<ExperimentReport>& reports);

/// `dataset,spec,median,iqr,trials` rows with a header line.
std::string format_csv(const std::vector<ExperimentReport>& reports);

}  // namespace rkm

#endif  // RKM_EVAL_HPP
