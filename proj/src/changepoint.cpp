#include "rgraph/changepoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rgraph/parallel.hpp"

namespace rgraph {

namespace {

constexpr std::uint64_t kScanStream = 0x7363616e;

struct Window {
  int lo, hi;
};

Window scan_window(int n, double boundary) {
  const int lo = std::max(static_cast<int>(std::ceil(boundary * n - 1e-9)), 2);
  const int hi = std::min(static_cast<int>(std::floor((1.0 - boundary) * n + 1e-9)), n - 2);
  require(lo <= hi, ErrorCode::kInvalidArgument, "empty scan window");
  return {lo, hi};
}

/// Per-split moments and whether the statistic is defined there.
struct SplitTable {
  int lo = 0;
  std::vector<NullMoments> moments;
  std::vector<char> defined;
};

SplitTable build_split_table(const DirectedGraph& g, const Window& w, StatKind kind) {
  SplitTable table;
  table.lo = w.lo;
  table.moments.reserve(static_cast<std::size_t>(w.hi - w.lo + 1));
  table.defined.reserve(static_cast<std::size_t>(w.hi - w.lo + 1));
  int n_defined = 0;
  for (int t = w.lo; t <= w.hi; ++t) {
    table.moments.push_back(permutation_null_moments(g, t));
    const bool ok = statistic_defined(kind, table.moments.back());
    table.defined.push_back(ok ? 1 : 0);
    n_defined += ok ? 1 : 0;
  }
  require(n_defined > 0, ErrorCode::kDegenerateCovariance,
          "the statistic is undefined at every candidate split");
  return table;
}

/// One incremental pass over the sequence in the given node order; returns
/// the maximum statistic over the window and optionally the full curve.
double walk_max(const DirectedGraph& g, const std::vector<std::vector<int>>& adjacency,
                const std::vector<int>& order, const Window& w, StatKind kind,
                const SplitTable& table, std::vector<ScanPoint>* curve, int* argmax) {
  const int n = g.n_nodes;
  std::vector<char> in_first(static_cast<std::size_t>(n), 0);
  std::int64_t r1 = 0;
  std::int64_t r2 = g.n_edges();  // every edge starts inside sample 2
  double best = -std::numeric_limits<double>::infinity();
  int best_t = -1;

  for (int t = 1; t <= w.hi; ++t) {
    const int v = order[static_cast<std::size_t>(t - 1)];
    std::int64_t to_first = 0;
    for (int u : adjacency[static_cast<std::size_t>(v)])
      to_first += in_first[static_cast<std::size_t>(u)];
    r1 += to_first;
    r2 -= static_cast<std::int64_t>(adjacency[static_cast<std::size_t>(v)].size()) - to_first;
    in_first[static_cast<std::size_t>(v)] = 1;

    if (t < w.lo) continue;
    const std::size_t idx = static_cast<std::size_t>(t - table.lo);
    if (!table.defined[idx]) {
      if (curve) curve->push_back({t, 0.0, true});
      continue;
    }
    EdgeCounts ec;
    ec.within1 = r1;
    ec.within2 = r2;
    ec.total = g.n_edges();
    ec.between = ec.total - r1 - r2;
    const double value = compute_statistic(kind, ec, table.moments[idx]).value;
    if (curve) curve->push_back({t, value, false});
    if (value > best) {
      best = value;
      best_t = t;
    }
  }
  if (argmax) *argmax = best_t;
  return best;
}

std::vector<std::vector<int>> build_adjacency(const DirectedGraph& g) {
  std::vector<std::vector<int>> adjacency(static_cast<std::size_t>(g.n_nodes));
  for (const auto& [i, j] : g.edges) {
    adjacency[static_cast<std::size_t>(i)].push_back(j);
    adjacency[static_cast<std::size_t>(j)].push_back(i);
  }
  return adjacency;
}

}  // namespace

void validate(const ScanConfig& cfg) {
  validate(to_test_config(cfg));
  require(cfg.boundary > 0.0 && cfg.boundary < 0.5, ErrorCode::kInvalidArgument,
          "boundary fraction must be in (0, 0.5)");
}

TestConfig to_test_config(const ScanConfig& cfg) {
  TestConfig tc;
  tc.graph = cfg.graph;
  tc.k = cfg.k;
  tc.lambda = cfg.lambda;
  tc.statistic = cfg.statistic;
  tc.mode = PValueMode::kPermutation;
  tc.permutations = cfg.permutations;
  tc.seed = cfg.seed;
  tc.alpha = cfg.alpha;
  tc.metric = cfg.metric;
  tc.max_passes = cfg.max_passes;
  return tc;
}

ScanResult scan(const Dataset& seq, const ScanConfig& cfg) {
  validate(cfg);
  const int n = seq.n();
  require(n >= 20, ErrorCode::kInvalidArgument,
          "need at least 20 observations for a scan, got " + std::to_string(n));
  const Window w = scan_window(n, cfg.boundary);

  const BuiltGraph built = build_graph(seq, to_test_config(cfg));
  const DirectedGraph& g = built.graph;
  const SplitTable table = build_split_table(g, w, cfg.statistic);
  const auto adjacency = build_adjacency(g);

  ScanResult result;
  result.window_lo = w.lo;
  result.window_hi = w.hi;
  result.graph = summarize(g, built.converged);

  std::vector<int> identity(static_cast<std::size_t>(n));
  std::iota(identity.begin(), identity.end(), 0);
  result.max_statistic =
      walk_max(g, adjacency, identity, w, cfg.statistic, table, &result.curve, &result.tau_hat);
  for (const auto& p : result.curve) result.n_skipped += p.skipped ? 1 : 0;

  const int b = cfg.permutations;
  std::vector<double> maxima(static_cast<std::size_t>(b));
  parallel_for(static_cast<std::size_t>(b), [&](std::size_t rep) {
    Rng rng(derive_seed(cfg.seed, kScanStream, rep));
    std::vector<int> order(identity);
    rng.shuffle(order);
    maxima[rep] = walk_max(g, adjacency, order, w, cfg.statistic, table, nullptr, nullptr);
  });

  // tie band as in permutation_pvalue: mathematical ">=" over floats
  const double tie_tol = 1e-9 * (1.0 + std::abs(result.max_statistic));
  std::int64_t exceed = 0;
  for (double value : maxima)
    if (value >= result.max_statistic - tie_tol) ++exceed;
  result.pvalue = static_cast<double>(1 + exceed) / static_cast<double>(b + 1);
  result.significant = result.pvalue <= cfg.alpha;
  return result;
}

std::vector<ScanPoint> scan_curve(const DirectedGraph& g, int window_lo, int window_hi,
                                  StatKind kind) {
  require(window_lo >= 2 && window_hi <= g.n_nodes - 2 && window_lo <= window_hi,
          ErrorCode::kInvalidArgument, "invalid scan window");
  const Window w{window_lo, window_hi};
  const SplitTable table = build_split_table(g, w, kind);
  const auto adjacency = build_adjacency(g);
  std::vector<int> identity(static_cast<std::size_t>(g.n_nodes));
  std::iota(identity.begin(), identity.end(), 0);
  std::vector<ScanPoint> curve;
  walk_max(g, adjacency, identity, w, kind, table, &curve, nullptr);
  return curve;
}

}  // namespace rgraph
