#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rgraph/graphs.hpp"

namespace rgraph {

/// Sample labels, 1 for the first sample and 2 for the second.
struct LabelVector {
  std::vector<int> labels;
  int m = 0;  // count of label 1
  int n = 0;  // count of label 2

  int size() const { return m + n; }
};

LabelVector make_labels(std::vector<int> labels);

/// Labels with the first `t` nodes in sample 1, as used by the scan.
LabelVector prefix_labels(int n_total, int t);

struct EdgeCounts {
  std::int64_t within1 = 0;  // edges with both endpoints in sample 1
  std::int64_t within2 = 0;
  std::int64_t between = 0;
  std::int64_t total = 0;
};

EdgeCounts edge_counts(const DirectedGraph& g, const LabelVector& lv);

/// Exact first and second moments of the within-sample edge counts under
/// the permutation null (uniform over all choices of m of the N nodes as
/// sample 1), plus derived moments for the between count, the weighted
/// count ((n-1)R1 + (m-1)R2)/(N-2) and the difference R1 - R2.
struct NullMoments {
  double mean_within1 = 0, mean_within2 = 0;
  double var_within1 = 0, var_within2 = 0;
  double cov_within = 0;
  double mean_between = 0, var_between = 0;
  double mean_weighted = 0, var_weighted = 0;
  double mean_diff = 0, var_diff = 0;
  double cov_weighted_diff = 0;
  int m = 0, n = 0;
  std::int64_t n_edges = 0;
};

/// Closed-form moments from the ordered edge-pair classification: pairs
/// sharing 2, 3 or 4 distinct support nodes weighted by the matching
/// falling-factorial selection probabilities.
NullMoments permutation_null_moments(const DirectedGraph& g, int m);

/// Exact joint distribution of (R1, R2) by full enumeration of all
/// C(N, m) label assignments; the independent oracle for the closed form.
struct JointDistribution {
  std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> counts;
  std::int64_t total = 0;
  int m = 0, n = 0;
  std::int64_t n_edges = 0;

  double probability(std::int64_t r1, std::int64_t r2) const;
};

JointDistribution enumerate_null(const DirectedGraph& g, int m,
                                 std::uint64_t cap = 1'000'000);

/// Moments computed directly from an enumerated table.
NullMoments moments_from_enumeration(const JointDistribution& jd);

enum class StatKind { kGet, kWet, kMet, kOet };

const char* stat_kind_name(StatKind kind);
StatKind stat_kind_from_name(const std::string& name);

struct StatisticValue {
  StatKind kind = StatKind::kGet;
  double value = 0.0;
  std::optional<double> z_weighted;  // set for wet/met
  std::optional<double> z_diff;      // set for met
};

/// Quadratic form of the centered within-sample counts with the inverse
/// permutation covariance; nonnegative, asymptotically chi-square with
/// two degrees of freedom on well-behaved graphs.
StatisticValue get_statistic(const EdgeCounts& ec, const NullMoments& nm);

/// Standardized weighted and difference counts.
std::pair<double, double> zw_zd(const EdgeCounts& ec, const NullMoments& nm);

/// M = max(Z_w, |Z_d|).
StatisticValue met_statistic(const EdgeCounts& ec, const NullMoments& nm);

/// Standardized between-sample count with the sign flipped, so large
/// values indicate rejection.
StatisticValue oet_statistic(const EdgeCounts& ec, const NullMoments& nm);

StatisticValue compute_statistic(StatKind kind, const EdgeCounts& ec, const NullMoments& nm);

/// True when the variance structure the statistic divides by is
/// nonsingular, i.e. compute_statistic would not throw.
bool statistic_defined(StatKind kind, const NullMoments& nm);

}  // namespace rgraph
