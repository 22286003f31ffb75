#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rgraph/dataset.hpp"
#include "rgraph/edgecount.hpp"
#include "rgraph/graphs.hpp"

namespace rgraph {

/// Survival function of the chi-square distribution with 2 degrees of
/// freedom; closed form exp(-s/2).
inline double chi2_2_survival(double s) { return std::exp(-0.5 * s); }

/// Quantile of the same distribution at probability `prob`.
inline double chi2_2_quantile(double prob) { return -2.0 * std::log1p(-prob); }

/// Upper tail of the standard normal.
inline double normal_survival(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

enum class PValueMode { kAsymptotic, kPermutation };

const char* pvalue_mode_name(PValueMode mode);
PValueMode pvalue_mode_from_name(const std::string& name);

struct TestConfig {
  GraphKind graph = GraphKind::kKrnng;
  int k = 5;
  double lambda = 0.3;
  StatKind statistic = StatKind::kGet;
  PValueMode mode = PValueMode::kAsymptotic;
  int permutations = 1000;
  std::uint64_t seed = kDefaultSeed;
  double alpha = 0.05;
  Metric metric = Metric::kEuclidean;
  int max_passes = 100;
};

void validate(const TestConfig& cfg);

struct GraphSummary {
  GraphKind kind = GraphKind::kKnng;
  int n_nodes = 0;
  std::int64_t n_edges = 0;
  int max_degree = 0;
  double degree_variation = 0.0;
  std::int64_t mutual_edges = 0;
  bool converged = true;  // hub-penalized builder only; true otherwise
};

GraphSummary summarize(const DirectedGraph& g, bool converged = true);

/// Theorem-style validity check for the penalty weight: the upper bound on
/// lambda and the minimum sample-size requirement, both evaluated exactly.
struct LambdaValidity {
  double lambda = 0.0;
  double lambda_upper_bound = 0.0;  // (sqrt(8NK+4N-8K) - sqrt(8NK))^2 / 16
  bool lambda_ok = false;           // 0 < lambda < bound
  double min_sample_bound = 0.0;    // K + 2*lambda + sqrt(8*lambda*K*N)
  bool sample_size_ok = false;      // min(m, n) > bound
  bool ok = false;
};

LambdaValidity lambda_validity(int n_total, int k, double lambda, int m, int n);

struct TestResult {
  StatisticValue statistic;
  double pvalue = 1.0;
  bool significant = false;
  PValueMode mode = PValueMode::kAsymptotic;
  int m = 0, n = 0;
  GraphSummary graph;
  std::optional<LambdaValidity> lambda_check;  // present for the penalized graph
  bool degenerate = false;  // covariance singular / zero variance
  std::string note;
};

struct BuiltGraph {
  DirectedGraph graph;
  bool converged = true;
};

/// Builds the configured graph on a dataset (distances, ranks, builder).
BuiltGraph build_graph(const Dataset& ds, const TestConfig& cfg);

/// Runs the configured statistic and p-value on a fixed graph with fixed
/// labels. A singular covariance is reported in the result, not thrown.
TestResult test_on_graph(const DirectedGraph& g, const LabelVector& lv, const TestConfig& cfg,
                         bool converged = true);

/// Pools the samples, builds the graph on the pooled observations and runs
/// the two-sample test.
TestResult two_sample_test(const Dataset& x, const Dataset& y, const TestConfig& cfg);

/// Monte-Carlo permutation p-value: B uniform label assignments with the
/// observed m on the fixed graph; p = (1 + #{stat_b >= stat_obs}) / (B + 1).
/// Replicate seeds are derived from (seed, b), so the result is independent
/// of the execution order and thread count.
double permutation_pvalue(const DirectedGraph& g, const LabelVector& lv, StatKind kind, int b,
                          std::uint64_t seed);

struct SampleSizeCondition {
  std::string name;
  double threshold = 0.0;  // condition requires N above/at this value
  int min_n = 0;           // smallest integer N satisfying it
  bool applicable = true;
};

struct SampleSizeReport {
  int required_n = 0;
  std::string binding;
  std::vector<SampleSizeCondition> conditions;
  bool feasible = true;
  std::string note;
};

/// Minimal total sample size N for consistency at level alpha, combining
/// the three variance-configuration cases (all of them when the variance
/// limits are unknown), the lambda upper bound, and the minimum sample-size
/// condition. `ratio_m_over_n` fixes the sample-size ratio m/n.
SampleSizeReport consistency_sample_size(int k, double lambda, double alpha,
                                         double ratio_m_over_n,
                                         std::optional<double> sigma1_sq = {},
                                         std::optional<double> sigma2_sq = {},
                                         std::optional<double> v_sq = {});

}  // namespace rgraph
