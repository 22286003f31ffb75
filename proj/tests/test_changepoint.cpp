#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "oracles.hpp"
#include "rgraph/changepoint.hpp"

using namespace rgraph;

TEST_CASE("curve length equals the window size") {
  Rng rng(40);
  const Dataset seq = oracle::random_dataset(rng, 40, 3);
  ScanConfig cfg;
  cfg.graph = GraphKind::kKnng;
  cfg.k = 3;
  cfg.permutations = 50;
  const ScanResult r = scan(seq, cfg);
  CHECK(r.window_lo == 2);
  CHECK(r.window_hi == 38);
  CHECK(r.curve.size() == static_cast<std::size_t>(r.window_hi - r.window_lo + 1));
  CHECK(r.tau_hat >= r.window_lo);
  CHECK(r.tau_hat <= r.window_hi);
  CHECK(r.pvalue >= 1.0 / 51.0);
  CHECK(r.pvalue <= 1.0);
}

TEST_CASE("scan rejects short sequences and bad windows") {
  Rng rng(41);
  const Dataset seq = oracle::random_dataset(rng, 12, 2);
  ScanConfig cfg;
  CHECK_THROWS_AS(scan(seq, cfg), Error);
  cfg.boundary = 0.7;
  CHECK_THROWS_AS(scan(oracle::random_dataset(rng, 30, 2), cfg), Error);
}

TEST_CASE("scan errors when every split is degenerate") {
  // the complete directed graph has equal degrees everywhere, so the
  // quadratic statistic is undefined at every candidate split
  Rng rng(43);
  const Dataset seq = oracle::random_dataset(rng, 20, 2);
  ScanConfig cfg;
  cfg.graph = GraphKind::kKnng;
  cfg.k = 19;
  cfg.permutations = 10;
  try {
    scan(seq, cfg);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDegenerateCovariance);
  }
}

TEST_CASE("reversing the sequence mirrors the quadratic statistic curve") {
  Rng rng(4242);
  const int n = 30;
  const Dataset seq = oracle::random_dataset(rng, n, 4);
  const DirectedGraph g = build_knng(neighbor_ranks(pairwise_distances(seq)), 3).graph;

  // the graph of the reversed sequence is the same graph with ids reversed
  DirectedGraph reversed;
  reversed.n_nodes = n;
  for (const auto& [i, j] : g.edges) reversed.edges.emplace_back(n - 1 - i, n - 1 - j);
  std::sort(reversed.edges.begin(), reversed.edges.end());

  const auto curve = scan_curve(g, 2, n - 2, StatKind::kGet);
  const auto mirrored = scan_curve(reversed, 2, n - 2, StatKind::kGet);
  std::map<int, double> by_t;
  for (const auto& p : mirrored)
    if (!p.skipped) by_t[p.t] = p.value;
  for (const auto& p : curve) {
    if (p.skipped) continue;
    REQUIRE(by_t.count(n - p.t));
    CHECK(p.value == doctest::Approx(by_t[n - p.t]).epsilon(1e-9));
  }
}

TEST_CASE("a change close to the edge clamps to the window boundary") {
  Rng rng(33);
  Dataset seq = oracle::random_dataset(rng, 20, 2);
  seq.values.bottomRows(17).array() += 100.0;  // change after row 3

  ScanConfig cfg;
  cfg.graph = GraphKind::kKnng;
  cfg.k = 2;
  cfg.permutations = 200;
  cfg.boundary = 0.25;  // window starts at t = 5, past the true change
  const ScanResult r = scan(seq, cfg);
  CHECK(r.window_lo == 5);
  CHECK(r.tau_hat == 5);  // boundary split closest to the change
}

TEST_CASE("a clear mid-sequence change is located") {
  Rng rng(34);
  Dataset seq = oracle::random_dataset(rng, 60, 3);
  seq.values.bottomRows(30).array() += 8.0;

  ScanConfig cfg;
  cfg.graph = GraphKind::kKrnng;
  cfg.k = 3;
  cfg.permutations = 200;
  cfg.seed = 34;
  const ScanResult r = scan(seq, cfg);
  CHECK(r.significant);
  CHECK(r.tau_hat == 30);
}

TEST_CASE("scan p-value matches exhaustive ordering enumeration on a tiny graph") {
  // all 8! row orders enumerated; the same walk machinery is then
  // Monte-Carlo sampled the way the scan does it
  Rng rng(88);
  const int n = 8;
  const Dataset seq = oracle::random_dataset(rng, n, 2);
  const DirectedGraph g = build_knng(neighbor_ranks(pairwise_distances(seq)), 2).graph;
  const int lo = 2, hi = n - 2;

  std::vector<NullMoments> table;
  for (int t = lo; t <= hi; ++t) table.push_back(permutation_null_moments(g, t));

  const auto max_scan = [&](const std::vector<int>& order) {
    double best = -1e300;
    for (int t = lo; t <= hi; ++t) {
      const NullMoments& nm = table[static_cast<std::size_t>(t - lo)];
      if (!statistic_defined(StatKind::kGet, nm)) continue;
      std::vector<int> labels(static_cast<std::size_t>(n), 2);
      for (int i = 0; i < t; ++i) labels[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = 1;
      const double v = get_statistic(edge_counts(g, make_labels(labels)), nm).value;
      best = std::max(best, v);
    }
    return best;
  };

  std::vector<int> identity(static_cast<std::size_t>(n));
  std::iota(identity.begin(), identity.end(), 0);
  const double observed = max_scan(identity);

  // exhaustive distribution over all orderings
  std::vector<int> order = identity;
  std::int64_t total = 0, at_least = 0;
  do {
    ++total;
    if (max_scan(order) >= observed - 1e-12) ++at_least;
  } while (std::next_permutation(order.begin(), order.end()));
  const double exact = static_cast<double>(at_least) / static_cast<double>(total);

  // Monte-Carlo estimate with random orderings, same convention as scan()
  const int b = 20000;
  int exceed = 0;
  for (int rep = 0; rep < b; ++rep) {
    Rng perm_rng(derive_seed(88, 2, static_cast<std::uint64_t>(rep)));
    std::vector<int> shuffled = identity;
    perm_rng.shuffle(shuffled);
    if (max_scan(shuffled) >= observed) ++exceed;
  }
  const double estimate = static_cast<double>(1 + exceed) / (b + 1);
  const double se = std::sqrt(exact * (1.0 - exact) / b);
  CHECK(std::abs(estimate - exact) <= 3.0 * se + 2.0 / b);
}

TEST_CASE("scan curve columns stay inside the window and match direct evaluation") {
  Rng rng(55);
  const Dataset seq = oracle::random_dataset(rng, 25, 2);
  const DirectedGraph g = build_knng(neighbor_ranks(pairwise_distances(seq)), 3).graph;
  const auto curve = scan_curve(g, 3, 22, StatKind::kGet);
  CHECK(curve.size() == 20);
  for (const auto& p : curve) {
    CHECK(p.t >= 3);
    CHECK(p.t <= 22);
    if (p.skipped) continue;
    const NullMoments nm = permutation_null_moments(g, p.t);
    std::vector<int> labels(25, 2);
    for (int i = 0; i < p.t; ++i) labels[static_cast<std::size_t>(i)] = 1;
    const double direct = get_statistic(edge_counts(g, make_labels(labels)), nm).value;
    CHECK(p.value == doctest::Approx(direct).epsilon(1e-12));
  }
}
