#include "rgraph/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rgraph/parallel.hpp"

namespace rgraph {

namespace {

// seed streams, mixed into derived seeds so the stages never share draws
constexpr std::uint64_t kBuilderStream = 0x6272636b;   // graph builder node order
constexpr std::uint64_t kPermuteStream = 0x7065726d;   // permutation replicates

}  // namespace

const char* pvalue_mode_name(PValueMode mode) {
  return mode == PValueMode::kAsymptotic ? "asymptotic" : "permutation";
}

PValueMode pvalue_mode_from_name(const std::string& name) {
  if (name == "asymptotic") return PValueMode::kAsymptotic;
  if (name == "permutation") return PValueMode::kPermutation;
  fail(ErrorCode::kInvalidArgument, "unknown p-value mode: " + name);
}

void validate(const TestConfig& cfg) {
  require(cfg.k >= 1, ErrorCode::kInvalidArgument, "k must be at least 1");
  require(cfg.lambda >= 0.0, ErrorCode::kInvalidArgument, "lambda must be nonnegative");
  require(cfg.permutations >= 1, ErrorCode::kInvalidArgument, "permutations must be positive");
  require(cfg.alpha > 0.0 && cfg.alpha < 1.0, ErrorCode::kInvalidArgument,
          "alpha must be in (0, 1)");
  require(cfg.max_passes >= 1, ErrorCode::kInvalidArgument, "max_passes must be positive");
}

GraphSummary summarize(const DirectedGraph& g, bool converged) {
  const GraphStats s = graph_stats(g);
  GraphSummary summary;
  summary.kind = g.kind;
  summary.n_nodes = s.n_nodes;
  summary.n_edges = s.n_edges;
  summary.max_degree = s.max_degree;
  summary.degree_variation = s.degree_variation;
  summary.mutual_edges = s.mutual_edges;
  summary.converged = converged;
  return summary;
}

LambdaValidity lambda_validity(int n_total, int k, double lambda, int m, int n) {
  require(n_total == m + n, ErrorCode::kInvalidArgument, "N must equal m + n");
  require(k >= 1, ErrorCode::kInvalidArgument, "k must be at least 1");

  LambdaValidity v;
  v.lambda = lambda;
  const double nk8 = 8.0 * n_total * k;
  const double inner = nk8 + 4.0 * n_total - 8.0 * k;
  const double diff = std::sqrt(inner) - std::sqrt(nk8);
  v.lambda_upper_bound = diff * diff / 16.0;
  v.lambda_ok = lambda > 0.0 && lambda < v.lambda_upper_bound;
  v.min_sample_bound = k + 2.0 * lambda + std::sqrt(8.0 * lambda * k * n_total);
  v.sample_size_ok = static_cast<double>(std::min(m, n)) > v.min_sample_bound;
  v.ok = v.lambda_ok && v.sample_size_ok;
  return v;
}

BuiltGraph build_graph(const Dataset& ds, const TestConfig& cfg) {
  validate(cfg);
  const DistanceMatrix dm = pairwise_distances(ds, cfg.metric);
  BuiltGraph built;
  switch (cfg.graph) {
    case GraphKind::kKnng:
      built.graph = build_knng(neighbor_ranks(dm), cfg.k).graph;
      break;
    case GraphKind::kKmst:
      built.graph = build_kmst(dm, cfg.k);
      break;
    case GraphKind::kKrnng: {
      KrnngOptions options;
      options.lambda = cfg.lambda;
      options.seed = derive_seed(cfg.seed, kBuilderStream);
      options.max_passes = cfg.max_passes;
      KrnngResult r = build_krnng(neighbor_ranks(dm), cfg.k, options);
      built.graph = std::move(r.graph);
      built.converged = r.converged;
      break;
    }
  }
  return built;
}

TestResult test_on_graph(const DirectedGraph& g, const LabelVector& lv, const TestConfig& cfg,
                         bool converged) {
  validate(cfg);
  TestResult result;
  result.mode = cfg.mode;
  result.m = lv.m;
  result.n = lv.n;
  result.graph = summarize(g, converged);
  if (cfg.graph == GraphKind::kKrnng)
    result.lambda_check = lambda_validity(lv.size(), cfg.k, cfg.lambda, lv.m, lv.n);

  const EdgeCounts ec = edge_counts(g, lv);
  try {
    const NullMoments nm = permutation_null_moments(g, lv.m);
    result.statistic = compute_statistic(cfg.statistic, ec, nm);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kDegenerateCovariance && e.code() != ErrorCode::kZeroVariance)
      throw;
    result.degenerate = true;
    result.note = e.what();
    result.statistic.kind = cfg.statistic;
    result.statistic.value = std::numeric_limits<double>::quiet_NaN();
    result.pvalue = 1.0;
    result.significant = false;
    return result;
  }

  if (cfg.mode == PValueMode::kAsymptotic) {
    switch (cfg.statistic) {
      case StatKind::kGet:
        result.pvalue = chi2_2_survival(result.statistic.value);
        break;
      case StatKind::kWet:
      case StatKind::kOet:
        result.pvalue = normal_survival(result.statistic.value);
        break;
      case StatKind::kMet:
        fail(ErrorCode::kInvalidArgument,
             "no asymptotic p-value for the max-type statistic; use permutation mode");
    }
  } else {
    result.pvalue = permutation_pvalue(g, lv, cfg.statistic, cfg.permutations, cfg.seed);
  }
  result.significant = result.pvalue <= cfg.alpha;
  return result;
}

TestResult two_sample_test(const Dataset& x, const Dataset& y, const TestConfig& cfg) {
  require(x.dim() == y.dim(), ErrorCode::kInvalidArgument,
          "samples have different dimensions");
  require(x.n() >= 2 && y.n() >= 2, ErrorCode::kInvalidArgument,
          "each sample needs at least two observations");

  const Dataset pooled = pool_datasets(x, y);
  const LabelVector lv = make_labels(pooled.labels);
  const BuiltGraph built = build_graph(pooled, cfg);
  return test_on_graph(built.graph, lv, cfg, built.converged);
}

double permutation_pvalue(const DirectedGraph& g, const LabelVector& lv, StatKind kind, int b,
                          std::uint64_t seed) {
  require(b >= 1, ErrorCode::kInvalidArgument, "need at least one permutation");

  const NullMoments nm = permutation_null_moments(g, lv.m);
  const double observed = compute_statistic(kind, edge_counts(g, lv), nm).value;

  const int n_total = g.n_nodes;
  std::vector<double> replicate(static_cast<std::size_t>(b));
  parallel_for(static_cast<std::size_t>(b), [&](std::size_t rep) {
    Rng rng(derive_seed(seed, kPermuteStream, rep));
    const std::vector<int> chosen = rng.sample_without_replacement(n_total, lv.m);
    std::vector<int> labels(static_cast<std::size_t>(n_total), 2);
    for (int i : chosen) labels[static_cast<std::size_t>(i)] = 1;
    LabelVector plv;
    plv.labels = std::move(labels);
    plv.m = lv.m;
    plv.n = lv.n;
    replicate[rep] = compute_statistic(kind, edge_counts(g, plv), nm).value;
  });

  // ">=" must include ties that are exact in rational arithmetic but land
  // an ulp apart when reached through different integer count pairs
  const double tie_tol = 1e-9 * (1.0 + std::abs(observed));
  std::int64_t exceed = 0;
  for (double value : replicate)
    if (value >= observed - tie_tol) ++exceed;
  return static_cast<double>(1 + exceed) / static_cast<double>(b + 1);
}

namespace {

/// Case bound from the consistency theorem, parametrized by the sample
/// ratio rho = (size of the larger-variance sample) / (the other one).
double case_bound(double rho, double k, double lambda, double xi) {
  if (!(lambda > 0.0)) return std::numeric_limits<double>::infinity();
  const double k_over_lambda = k / lambda;
  const double linear = 2.0 * rho * k / xi * (1.0 + k / (2.0 * lambda) + rho * k / xi - k);
  const double root = std::sqrt(k_over_lambda) + std::sqrt(k_over_lambda + linear);
  return xi * xi / (2.0 * k * k * rho * rho) * root * root;
}

int min_n_strictly_above(double threshold) {
  if (!std::isfinite(threshold)) return -1;
  return static_cast<int>(std::floor(threshold)) + 1;
}

}  // namespace

SampleSizeReport consistency_sample_size(int k, double lambda, double alpha,
                                         double ratio_m_over_n, std::optional<double> sigma1_sq,
                                         std::optional<double> sigma2_sq,
                                         std::optional<double> v_sq) {
  require(k >= 1, ErrorCode::kInvalidArgument, "k must be at least 1");
  require(alpha > 0.0 && alpha < 1.0, ErrorCode::kInvalidArgument, "alpha must be in (0, 1)");
  require(ratio_m_over_n > 0.0, ErrorCode::kInvalidArgument, "ratio must be positive");

  SampleSizeReport report;
  if (!(lambda > 0.0)) {
    report.feasible = false;
    report.note = "the consistency conditions require lambda > 0";
    return report;
  }

  const double xi = chi2_2_quantile(1.0 - alpha);
  const double rho = ratio_m_over_n;
  const bool have_sigmas = sigma1_sq && sigma2_sq && v_sq;

  bool case1_applicable = true, case2_applicable = true, case3_applicable = true;
  if (have_sigmas) {
    const double gap = *sigma1_sq - *sigma2_sq;
    case1_applicable = std::abs(gap) < *v_sq;
    case2_applicable = gap > *v_sq;
    case3_applicable = -gap > *v_sq;
    if (!case1_applicable && !case2_applicable && !case3_applicable) {
      // boundary configuration not covered by any case; keep all three
      case1_applicable = case2_applicable = case3_applicable = true;
      report.note = "variance limits fall on a case boundary; using all three cases";
    }
  }

  const int cap = 10'000'000;
  // scanned conditions: smallest N making each hold (they stay true beyond)
  const auto scan_lambda_bound = [&]() -> int {
    for (int n = 4; n <= cap; ++n) {
      const double nk8 = 8.0 * n * k;
      const double diff = std::sqrt(nk8 + 4.0 * n - 8.0 * k) - std::sqrt(nk8);
      if (lambda < diff * diff / 16.0) return n;
    }
    return -1;
  };
  const auto scan_min_sample = [&]() -> int {
    for (int n = 4; n <= cap; ++n) {
      const double min_mn = n * std::min(rho, 1.0) / (1.0 + rho);
      if (min_mn > k + 2.0 * lambda + std::sqrt(8.0 * lambda * k * n)) return n;
    }
    return -1;
  };

  const double ik = static_cast<double>(k);
  const double case1_threshold =
      2.5 + xi / ik + std::sqrt(0.25 + 3.0 * xi / ik + (xi / ik) * (xi / ik));

  // condition order fixes the tie-break for the reported binding constraint
  report.conditions.push_back({"lambda_upper_bound", 0.0, scan_lambda_bound(), true});
  report.conditions.push_back({"min_sample_size", 0.0, scan_min_sample(), true});
  report.conditions.push_back(
      {"case1", case1_threshold, min_n_strictly_above(case1_threshold), case1_applicable});
  const double case2_threshold = case_bound(rho, ik, lambda, xi);
  report.conditions.push_back(
      {"case2", case2_threshold, min_n_strictly_above(case2_threshold), case2_applicable});
  const double case3_threshold = case_bound(1.0 / rho, ik, lambda, xi);
  report.conditions.push_back(
      {"case3", case3_threshold, min_n_strictly_above(case3_threshold), case3_applicable});

  report.required_n = 0;
  for (const auto& c : report.conditions) {
    if (!c.applicable) continue;
    if (c.min_n < 0) {
      report.feasible = false;
      report.note = "condition '" + c.name + "' cannot be satisfied";
      return report;
    }
    if (c.min_n > report.required_n) {
      report.required_n = c.min_n;
      report.binding = c.name;
    }
  }
  return report;
}

}  // namespace rgraph
