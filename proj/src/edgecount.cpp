#include "rgraph/edgecount.hpp"

#include <algorithm>
#include <cmath>

namespace rgraph {

namespace {

/// Falling-factorial selection probability: chance that k specific distinct
/// nodes are all assigned to a sample of size m out of n_total.
double select_prob(int m, int n_total, int k) {
  double p = 1.0;
  for (int i = 0; i < k; ++i)
    p *= static_cast<double>(m - i) / static_cast<double>(n_total - i);
  return p;
}

double zero_var_tolerance(std::int64_t n_edges) {
  const double g = static_cast<double>(n_edges) + 1.0;
  return 1e-12 * g * g;
}

}  // namespace

LabelVector make_labels(std::vector<int> labels) {
  LabelVector lv;
  lv.labels = std::move(labels);
  for (int l : lv.labels) {
    require(l == 1 || l == 2, ErrorCode::kInvalidArgument,
            "labels must be 1 or 2, got " + std::to_string(l));
    if (l == 1)
      ++lv.m;
    else
      ++lv.n;
  }
  require(lv.m >= 1 && lv.n >= 1, ErrorCode::kInvalidArgument,
          "both samples must be non-empty");
  return lv;
}

LabelVector prefix_labels(int n_total, int t) {
  require(t >= 1 && t <= n_total - 1, ErrorCode::kInvalidArgument, "prefix size out of range");
  std::vector<int> labels(static_cast<std::size_t>(n_total), 2);
  for (int i = 0; i < t; ++i) labels[static_cast<std::size_t>(i)] = 1;
  return make_labels(std::move(labels));
}

EdgeCounts edge_counts(const DirectedGraph& g, const LabelVector& lv) {
  require(lv.size() == g.n_nodes, ErrorCode::kInvalidArgument,
          "label vector length does not match node count");
  EdgeCounts ec;
  ec.total = g.n_edges();
  for (const auto& [i, j] : g.edges) {
    const int li = lv.labels[static_cast<std::size_t>(i)];
    const int lj = lv.labels[static_cast<std::size_t>(j)];
    if (li == 1 && lj == 1)
      ++ec.within1;
    else if (li == 2 && lj == 2)
      ++ec.within2;
  }
  ec.between = ec.total - ec.within1 - ec.within2;
  return ec;
}

NullMoments permutation_null_moments(const DirectedGraph& g, int m) {
  const int n_total = g.n_nodes;
  require(m >= 2 && m <= n_total - 2, ErrorCode::kInvalidArgument,
          "m must be in [2, N-2], got m=" + std::to_string(m) +
              " with N=" + std::to_string(n_total));

  const GraphStats s = graph_stats(g);
  const double edges = static_cast<double>(s.n_edges);

  // Ordered pairs of directed edges, classified by distinct support size:
  //   identical pair / reversed pair -> 2 nodes,
  //   share exactly one node         -> 3 nodes,
  //   disjoint                       -> 4 nodes.
  const double mutual = static_cast<double>(s.mutual_edges);
  const double share_one =
      static_cast<double>(s.sum_degree_sq) - 2.0 * edges - 2.0 * mutual;
  const double disjoint = edges * edges - edges - mutual - share_one;

  const int n_other = n_total - m;
  NullMoments nm;
  nm.m = m;
  nm.n = n_other;
  nm.n_edges = s.n_edges;

  const auto second_moment = [&](int mm) {
    return (edges + mutual) * select_prob(mm, n_total, 2) +
           share_one * select_prob(mm, n_total, 3) + disjoint * select_prob(mm, n_total, 4);
  };

  nm.mean_within1 = edges * select_prob(m, n_total, 2);
  nm.mean_within2 = edges * select_prob(n_other, n_total, 2);
  nm.var_within1 = second_moment(m) - nm.mean_within1 * nm.mean_within1;
  nm.var_within2 = second_moment(n_other) - nm.mean_within2 * nm.mean_within2;

  // E[R1 R2]: only vertex-disjoint pairs can have one edge inside each sample.
  double cross = disjoint;
  for (int i = 0; i < 2; ++i) cross *= static_cast<double>(m - i);
  for (int i = 0; i < 2; ++i) cross *= static_cast<double>(n_other - i);
  for (int i = 0; i < 4; ++i) cross /= static_cast<double>(n_total - i);
  nm.cov_within = cross - nm.mean_within1 * nm.mean_within2;

  nm.mean_between = edges - nm.mean_within1 - nm.mean_within2;
  nm.var_between = nm.var_within1 + nm.var_within2 + 2.0 * nm.cov_within;

  const double a = static_cast<double>(n_other - 1) / (n_total - 2);
  const double b = static_cast<double>(m - 1) / (n_total - 2);
  nm.mean_weighted = a * nm.mean_within1 + b * nm.mean_within2;
  nm.var_weighted =
      a * a * nm.var_within1 + b * b * nm.var_within2 + 2.0 * a * b * nm.cov_within;
  nm.mean_diff = nm.mean_within1 - nm.mean_within2;
  nm.var_diff = nm.var_within1 + nm.var_within2 - 2.0 * nm.cov_within;
  nm.cov_weighted_diff = a * nm.var_within1 - b * nm.var_within2 + (b - a) * nm.cov_within;
  return nm;
}

double JointDistribution::probability(std::int64_t r1, std::int64_t r2) const {
  const auto it = counts.find({r1, r2});
  if (it == counts.end()) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(total);
}

JointDistribution enumerate_null(const DirectedGraph& g, int m, std::uint64_t cap) {
  const int n_total = g.n_nodes;
  require(m >= 1 && m <= n_total - 1, ErrorCode::kInvalidArgument, "m out of range");

  // C(N, m) with overflow guard against the cap.
  double n_assignments = 1.0;
  for (int i = 0; i < m; ++i)
    n_assignments *= static_cast<double>(n_total - i) / static_cast<double>(i + 1);
  require(n_assignments <= static_cast<double>(cap) * (1.0 + 1e-9), ErrorCode::kCapExceeded,
          "enumeration would need " + std::to_string(n_assignments) +
              " assignments, cap is " + std::to_string(cap));

  JointDistribution jd;
  jd.m = m;
  jd.n = n_total - m;
  jd.n_edges = g.n_edges();

  std::vector<int> labels(static_cast<std::size_t>(n_total), 2);
  std::vector<int> comb(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) comb[static_cast<std::size_t>(i)] = i;

  for (;;) {
    std::fill(labels.begin(), labels.end(), 2);
    for (int i : comb) labels[static_cast<std::size_t>(i)] = 1;

    std::int64_t r1 = 0, r2 = 0;
    for (const auto& [i, j] : g.edges) {
      const int li = labels[static_cast<std::size_t>(i)];
      const int lj = labels[static_cast<std::size_t>(j)];
      if (li == 1 && lj == 1)
        ++r1;
      else if (li == 2 && lj == 2)
        ++r2;
    }
    ++jd.counts[{r1, r2}];
    ++jd.total;

    // advance to the next m-combination in lexicographic order
    int pos = m - 1;
    while (pos >= 0 && comb[static_cast<std::size_t>(pos)] == n_total - m + pos) --pos;
    if (pos < 0) break;
    ++comb[static_cast<std::size_t>(pos)];
    for (int q = pos + 1; q < m; ++q)
      comb[static_cast<std::size_t>(q)] = comb[static_cast<std::size_t>(q - 1)] + 1;
  }
  return jd;
}

NullMoments moments_from_enumeration(const JointDistribution& jd) {
  const double total = static_cast<double>(jd.total);
  double e1 = 0, e2 = 0, e11 = 0, e22 = 0, e12 = 0;
  for (const auto& [pair, count] : jd.counts) {
    const double r1 = static_cast<double>(pair.first);
    const double r2 = static_cast<double>(pair.second);
    const double w = static_cast<double>(count);
    e1 += w * r1;
    e2 += w * r2;
    e11 += w * r1 * r1;
    e22 += w * r2 * r2;
    e12 += w * r1 * r2;
  }
  e1 /= total;
  e2 /= total;
  e11 /= total;
  e22 /= total;
  e12 /= total;

  NullMoments nm;
  nm.m = jd.m;
  nm.n = jd.n;
  nm.n_edges = jd.n_edges;
  nm.mean_within1 = e1;
  nm.mean_within2 = e2;
  nm.var_within1 = e11 - e1 * e1;
  nm.var_within2 = e22 - e2 * e2;
  nm.cov_within = e12 - e1 * e2;
  nm.mean_between = static_cast<double>(jd.n_edges) - e1 - e2;
  nm.var_between = nm.var_within1 + nm.var_within2 + 2.0 * nm.cov_within;
  const int n_total = jd.m + jd.n;
  const double a = static_cast<double>(jd.n - 1) / (n_total - 2);
  const double b = static_cast<double>(jd.m - 1) / (n_total - 2);
  nm.mean_weighted = a * e1 + b * e2;
  nm.var_weighted =
      a * a * nm.var_within1 + b * b * nm.var_within2 + 2.0 * a * b * nm.cov_within;
  nm.mean_diff = e1 - e2;
  nm.var_diff = nm.var_within1 + nm.var_within2 - 2.0 * nm.cov_within;
  nm.cov_weighted_diff = a * nm.var_within1 - b * nm.var_within2 + (b - a) * nm.cov_within;
  return nm;
}

const char* stat_kind_name(StatKind kind) {
  switch (kind) {
    case StatKind::kGet: return "get";
    case StatKind::kWet: return "wet";
    case StatKind::kMet: return "met";
    case StatKind::kOet: return "oet";
  }
  return "unknown";
}

StatKind stat_kind_from_name(const std::string& name) {
  if (name == "get") return StatKind::kGet;
  if (name == "wet") return StatKind::kWet;
  if (name == "met") return StatKind::kMet;
  if (name == "oet") return StatKind::kOet;
  fail(ErrorCode::kInvalidArgument, "unknown statistic kind: " + name);
}

StatisticValue get_statistic(const EdgeCounts& ec, const NullMoments& nm) {
  const double v1 = nm.var_within1;
  const double v2 = nm.var_within2;
  const double c = nm.cov_within;
  const double det = v1 * v2 - c * c;
  if (v1 <= zero_var_tolerance(nm.n_edges) || v2 <= zero_var_tolerance(nm.n_edges) ||
      det <= 1e-12 * v1 * v2 || !(det > 0.0)) {
    fail(ErrorCode::kDegenerateCovariance,
         "permutation covariance of the within-sample counts is singular "
         "(all degrees equal, or an extreme penalty)");
  }
  const double x = static_cast<double>(ec.within1) - nm.mean_within1;
  const double y = static_cast<double>(ec.within2) - nm.mean_within2;
  StatisticValue sv;
  sv.kind = StatKind::kGet;
  sv.value = std::max(0.0, (v2 * x * x - 2.0 * c * x * y + v1 * y * y) / det);
  return sv;
}

std::pair<double, double> zw_zd(const EdgeCounts& ec, const NullMoments& nm) {
  const double tol = zero_var_tolerance(nm.n_edges);
  require(nm.var_weighted > tol, ErrorCode::kZeroVariance,
          "weighted edge count has zero permutation variance");
  require(nm.var_diff > tol, ErrorCode::kZeroVariance,
          "edge-count difference has zero permutation variance");

  const int n_total = nm.m + nm.n;
  const double rw = (static_cast<double>(nm.n - 1) * static_cast<double>(ec.within1) +
                     static_cast<double>(nm.m - 1) * static_cast<double>(ec.within2)) /
                    (n_total - 2);
  const double rd = static_cast<double>(ec.within1) - static_cast<double>(ec.within2);
  const double zw = (rw - nm.mean_weighted) / std::sqrt(nm.var_weighted);
  const double zd = (rd - nm.mean_diff) / std::sqrt(nm.var_diff);
  return {zw, zd};
}

StatisticValue met_statistic(const EdgeCounts& ec, const NullMoments& nm) {
  const auto [zw, zd] = zw_zd(ec, nm);
  StatisticValue sv;
  sv.kind = StatKind::kMet;
  sv.value = std::max(zw, std::abs(zd));
  sv.z_weighted = zw;
  sv.z_diff = zd;
  return sv;
}

StatisticValue oet_statistic(const EdgeCounts& ec, const NullMoments& nm) {
  require(nm.var_between > zero_var_tolerance(nm.n_edges), ErrorCode::kZeroVariance,
          "between-sample count has zero permutation variance");
  StatisticValue sv;
  sv.kind = StatKind::kOet;
  sv.value = -(static_cast<double>(ec.between) - nm.mean_between) / std::sqrt(nm.var_between);
  return sv;
}

bool statistic_defined(StatKind kind, const NullMoments& nm) {
  const double tol = zero_var_tolerance(nm.n_edges);
  switch (kind) {
    case StatKind::kGet: {
      if (nm.var_within1 <= tol || nm.var_within2 <= tol) return false;
      const double det = nm.var_within1 * nm.var_within2 - nm.cov_within * nm.cov_within;
      return det > 1e-12 * nm.var_within1 * nm.var_within2 && det > 0.0;
    }
    case StatKind::kWet:
    case StatKind::kMet:
      return nm.var_weighted > tol && nm.var_diff > tol;
    case StatKind::kOet:
      return nm.var_between > tol;
  }
  return false;
}

StatisticValue compute_statistic(StatKind kind, const EdgeCounts& ec, const NullMoments& nm) {
  switch (kind) {
    case StatKind::kGet: return get_statistic(ec, nm);
    case StatKind::kWet: {
      const auto [zw, zd] = zw_zd(ec, nm);
      StatisticValue sv;
      sv.kind = StatKind::kWet;
      sv.value = zw;
      sv.z_weighted = zw;
      sv.z_diff = zd;
      return sv;
    }
    case StatKind::kMet: return met_statistic(ec, nm);
    case StatKind::kOet: return oet_statistic(ec, nm);
  }
  fail(ErrorCode::kInvalidArgument, "unknown statistic kind");
}

}  // namespace rgraph
