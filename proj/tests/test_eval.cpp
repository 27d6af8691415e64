#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "rkm/eval.hpp"
#include "rkm/io.hpp"

using namespace rkm;

namespace {

LabelVector random_labels(std::mt19937_64& gen, std::size_t n, int distinct) {
  LabelVector out(n);
  for (auto& l : out) l = static_cast<int>(gen() % static_cast<std::uint64_t>(distinct));
  return out;
}

}  // namespace

TEST(Success, Examples) {
  EXPECT_DOUBLE_EQ(success_score({0, 0, 1, 1}, {0, 0, 1, 1}), 1.0);
  EXPECT_DOUBLE_EQ(success_score({1, 1, 0, 0}, {0, 0, 1, 1}), 1.0);
  EXPECT_DOUBLE_EQ(success_score({0, 0, 1, 1}, {0, 1, 1, 1}), 0.75);
  EXPECT_DOUBLE_EQ(oracle::exhaustive_success({0, 0, 1, 1}, {0, 1, 1, 1}), 0.75);
  EXPECT_DOUBLE_EQ(success_score({0, 0, 0, 0}, {0, 0, 1, 1}), 0.5);
  EXPECT_DOUBLE_EQ(success_score({0, 1, 2, 3}, {0, 0, 0, 0}), 0.25);
}

TEST(Success, LengthMismatchAndEmptyThrow) {
  EXPECT_THROW(success_score({0, 1}, {0}), ContractViolation);
  EXPECT_THROW(success_score({}, {}), ContractViolation);
}

TEST(Success, OutlierOnlyMatchesOutlierTruth) {
  EXPECT_DOUBLE_EQ(success_score({kOutlier, 0, 0}, {0, 0, 0}), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(success_score({kOutlier, 0, 0}, {kOutlier, 0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(success_score({kOutlier, kOutlier}, {1, 1}), 0.0);
}

TEST(Success, InvariantUnderRelabelling) {
  std::mt19937_64 gen(1);
  for (int t = 0; t < 200; ++t) {
    const auto p = random_labels(gen, 40, 5);
    const auto truth = random_labels(gen, 40, 4);
    std::vector<int> perm{0, 1, 2, 3, 4};
    std::shuffle(perm.begin(), perm.end(), gen);
    LabelVector q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[i] = perm[static_cast<std::size_t>(p[i])] + 10;
    EXPECT_DOUBLE_EQ(success_score(p, truth), success_score(q, truth));
  }
}

TEST(Success, MatchesExhaustiveMatching) {
  std::mt19937_64 gen(2);
  for (int t = 0; t < 300; ++t) {
    const int kp = 1 + static_cast<int>(gen() % 6), kt = 1 + static_cast<int>(gen() % 6);
    const auto p = random_labels(gen, 30, kp);
    const auto truth = random_labels(gen, 30, kt);
    EXPECT_NEAR(success_score(p, truth), oracle::exhaustive_success(p, truth), 1e-12);
  }
}

TEST(Success, AtLeastGreedy) {
  std::mt19937_64 gen(3);
  for (int t = 0; t < 300; ++t) {
    const auto p = random_labels(gen, 50, 7);
    const auto truth = random_labels(gen, 50, 5);
    const double s = success_score(p, truth);
    EXPECT_GE(s + 1e-12, oracle::greedy_success(p, truth));
    EXPECT_GT(s, 0.0);
    EXPECT_LE(s, 1.0);
  }
}

TEST(Assignment, RectangularMatrices) {
  Eigen::MatrixXd w(3, 2);
  w << 1, 9, 8, 1, 5, 5;
  const auto a = max_weight_assignment(w);
  EXPECT_EQ(a, (std::vector<int>{1, 0, -1}));
  const auto b = max_weight_assignment(w.transpose());
  EXPECT_EQ(b, (std::vector<int>{1, 0}));
}

TEST(MedianIqr, Examples) {
  const auto a = median_iqr({1.0, 1.0, 1.0});
  EXPECT_DOUBLE_EQ(a.median, 1.0);
  EXPECT_DOUBLE_EQ(a.iqr, 0.0);
  const auto b = median_iqr({0.5, 1.0});
  EXPECT_DOUBLE_EQ(b.median, 0.75);
  EXPECT_DOUBLE_EQ(b.iqr, 0.25);
  const auto c = median_iqr({4, 1, 3, 2, 5});
  EXPECT_DOUBLE_EQ(c.median, 3.0);
  EXPECT_DOUBLE_EQ(c.iqr, 2.0);
  EXPECT_THROW(median_iqr({}), std::invalid_argument);
}

TEST(MedianIqr, MatchesOrderStatistics) {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> v(1 + gen() % 100);
    for (auto& x : v) x = u(gen);
    const auto r = median_iqr(v);
    EXPECT_NEAR(r.median, oracle::order_statistic_quantile(v, 0.5), 1e-12);
    EXPECT_NEAR(r.iqr, oracle::order_statistic_quantile(v, 0.75) - oracle::order_statistic_quantile(v, 0.25),
                1e-12);
  }
}

TEST(Protocol, SingleRunMatchesPipeline) {
  const auto data = load_csv(std::string(RKM_DATA_DIR) + "/hepta.csv", true, -1);
  const auto spec = PipelineSpec::merged(20);
  const auto r = run_experiment("hepta", data.dataset, *data.truth, spec, 1, 1, 9);
  const auto labels = run_pipeline(data.dataset, spec, derive_seed(9, 0, 0));
  EXPECT_DOUBLE_EQ(r.trial_scores[0], success_score(labels, *data.truth));
  EXPECT_DOUBLE_EQ(r.median, r.trial_scores[0]);
  EXPECT_DOUBLE_EQ(r.iqr, 0.0);
}

TEST(Protocol, BestOfFiveDominatesEachRun) {
  const auto data = load_csv(std::string(RKM_DATA_DIR) + "/lsun.csv", true, -1);
  const auto spec = PipelineSpec::plain(3);
  const auto r = run_experiment("lsun", data.dataset, *data.truth, spec, 5, 5, 3);
  for (std::size_t t = 0; t < 5; ++t) {
    for (std::uint64_t run = 0; run < 5; ++run) {
      const auto labels = run_pipeline(data.dataset, spec, derive_seed(3, t, run));
      EXPECT_GE(r.trial_scores[t], success_score(labels, *data.truth));
    }
  }
}

TEST(Protocol, ThreadsDoNotChangeScores) {
  const auto data = load_csv(std::string(RKM_DATA_DIR) + "/target.csv", true, -1);
  const auto spec = PipelineSpec::merged(17);
  const auto a = run_experiment("target", data.dataset, *data.truth, spec, 4, 2, 5, 1);
  const auto b = run_experiment("target", data.dataset, *data.truth, spec, 4, 2, 5, 3);
  EXPECT_EQ(a.trial_scores, b.trial_scores);
}

TEST(Protocol, HeptaMergedIsPerfect) {
  const auto data = load_csv(std::string(RKM_DATA_DIR) + "/hepta.csv", true, -1);
  const auto r = run_experiment("hepta", data.dataset, *data.truth, PipelineSpec::merged(20), 10, 5, 1);
  EXPECT_DOUBLE_EQ(r.median, 1.0);
  EXPECT_DOUBLE_EQ(r.iqr, 0.0);
}

TEST(Protocol, ChainlinkBaselineNearPublished) {
  const auto data = load_csv(std::string(RKM_DATA_DIR) + "/chainlink.csv", true, -1);
  const auto r = run_experiment("chainlink", data.dataset, *data.truth, PipelineSpec::plain(2), 30, 5, 1);
  EXPECT_NEAR(r.median, 0.653, 0.06);
}

TEST(Protocol, BadArgumentsThrow) {
  const auto data = load_csv(std::string(RKM_DATA_DIR) + "/hepta.csv", true, -1);
  EXPECT_THROW(run_experiment("x", data.dataset, *data.truth, PipelineSpec::plain(2), 0, 5), std::invalid_argument);
  EXPECT_THROW(run_experiment("x", data.dataset, {0, 1}, PipelineSpec::plain(2), 1, 1), std::invalid_argument);
}

TEST(Report, DescribeAndCsv) {
  EXPECT_EQ(PipelineSpec::merged(20).describe(), "merge k=20");
  EXPECT_EQ(PipelineSpec::tiled(5.0, {2, 2}).describe(), "tiled pct=5 splits=2x2");
  EXPECT_EQ(PipelineSpec::plain(3).describe(), "kmeans k=3");
  ExperimentReport r;
  r.dataset = "atom";
  r.spec = PipelineSpec::merged(20);
  r.trials = 30;
  r.runs_per_trial = 5;
  r.median = 1.0;
  r.iqr = 0.0;
  const auto csv = format_csv({r});
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "dataset,spec,median,iqr,trials");
  EXPECT_NE(csv.find("atom,merge k=20,1.0000,0.0000,30"), std::string::npos);
  EXPECT_NE(format_table({r}).find("atom"), std::string::npos);
}
