#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rgraph/inference.hpp"
#include "rgraph/parallel.hpp"

using namespace rgraph;

TEST_CASE("chi-square(2) closed forms") {
  CHECK(chi2_2_survival(5.991464547107979) == doctest::Approx(0.05).epsilon(1e-9));
  CHECK(chi2_2_survival(5.0) == doctest::Approx(std::exp(-2.5)).epsilon(1e-12));
  CHECK(chi2_2_quantile(0.95) == doctest::Approx(-2.0 * std::log(0.05)).epsilon(1e-12));

  // closed form against numerical quadrature of the density
  for (double s : {0.1, 1.0, 2.5, 5.0, 5.991464547107979, 12.0})
    CHECK(std::abs(chi2_2_survival(s) - oracle::chi2_2_survival_quadrature(s)) <= 1e-10);
}

TEST_CASE("lambda validity bounds") {
  SUBCASE("N=69 admits 0.3") {
    const LambdaValidity v = lambda_validity(69, 5, 0.3, 34, 35);
    CHECK(v.lambda_upper_bound == doctest::Approx(0.3025).epsilon(1e-3));
    CHECK(v.lambda_ok);
  }
  SUBCASE("N=68 rejects 0.3") {
    const LambdaValidity v = lambda_validity(68, 5, 0.3, 34, 34);
    CHECK(v.lambda_upper_bound == doctest::Approx(0.2967).epsilon(1e-3));
    CHECK_FALSE(v.lambda_ok);
  }
  SUBCASE("lambda zero fails strict positivity") {
    CHECK_FALSE(lambda_validity(100, 5, 0.0, 50, 50).lambda_ok);
  }
}

TEST_CASE("consistency sample sizes reproduce the reference constants") {
  SUBCASE("balanced samples need 69") {
    const SampleSizeReport r = consistency_sample_size(5, 0.3, 0.05, 1.0);
    CHECK(r.feasible);
    CHECK(r.required_n == 69);
    CHECK(r.binding == "lambda_upper_bound");
  }
  SUBCASE("2:1 ratio needs 214, either way") {
    CHECK(consistency_sample_size(5, 0.3, 0.05, 2.0).required_n == 214);
    CHECK(consistency_sample_size(5, 0.3, 0.05, 0.5).required_n == 214);
  }
  SUBCASE("known variance limits select a single case") {
    // sigma1^2 - sigma2^2 > v^2 drops the worst case; the minimum-sample
    // condition becomes binding at the 2:1 ratio
    const SampleSizeReport r = consistency_sample_size(5, 0.3, 0.05, 2.0, 2.0, 0.5, 1.0);
    CHECK(r.required_n == 140);
    CHECK(r.binding == "min_sample_size");
    // the mirrored configuration keeps the heavy case
    const SampleSizeReport r2 = consistency_sample_size(5, 0.3, 0.05, 2.0, 0.5, 2.0, 1.0);
    CHECK(r2.required_n == 214);
  }
  SUBCASE("lambda zero is infeasible") {
    CHECK_FALSE(consistency_sample_size(5, 0.0, 0.05, 1.0).feasible);
  }
}

namespace {

DirectedGraph pair_plus_edge() {
  DirectedGraph g;
  g.n_nodes = 4;
  g.edges = {{0, 1}, {1, 0}, {2, 3}};
  return g;
}

}  // namespace

TEST_CASE("permutation p-value conventions") {
  const DirectedGraph g = pair_plus_edge();

  SUBCASE("observed at the very bottom gives exactly one") {
    // labels {1,2,1,2}: counts (0,0) and statistic 0.5, the minimum over
    // all assignments, so every replicate is at least as large
    const double p = permutation_pvalue(g, make_labels({1, 2, 1, 2}), StatKind::kGet, 999, 7);
    CHECK(p == 1.0);
  }
  SUBCASE("p is bounded below by 1/(B+1) and reproducible") {
    const double p1 = permutation_pvalue(g, make_labels({1, 1, 2, 2}), StatKind::kGet, 99, 7);
    const double p2 = permutation_pvalue(g, make_labels({1, 1, 2, 2}), StatKind::kGet, 99, 7);
    CHECK(p1 == p2);
    CHECK(p1 >= 1.0 / 100.0);
    CHECK(p1 <= 1.0);
  }
  SUBCASE("independent of the thread count") {
    set_thread_cap(1);
    const double p1 =
        permutation_pvalue(g, make_labels({1, 1, 2, 2}), StatKind::kGet, 500, 99);
    set_thread_cap(2);
    const double p2 =
        permutation_pvalue(g, make_labels({1, 1, 2, 2}), StatKind::kGet, 500, 99);
    set_thread_cap(0);
    CHECK(p1 == p2);
  }
}

TEST_CASE("permutation p-value agrees with the enumerated tail at small n") {
  Rng rng(606);
  const int n = 6;
  const DirectedGraph g = oracle::random_directed_graph(rng, n, 14);
  const int m = 3;
  const NullMoments nm = permutation_null_moments(g, m);
  REQUIRE(statistic_defined(StatKind::kGet, nm));

  const LabelVector lv = make_labels({1, 1, 1, 2, 2, 2});
  const double observed = get_statistic(edge_counts(g, lv), nm).value;

  // exact tail from the enumerated joint distribution
  const JointDistribution jd = enumerate_null(g, m);
  double exact_tail = 0.0;
  for (const auto& [pair, count] : jd.counts) {
    EdgeCounts ec;
    ec.within1 = pair.first;
    ec.within2 = pair.second;
    ec.total = g.n_edges();
    ec.between = ec.total - ec.within1 - ec.within2;
    if (get_statistic(ec, nm).value >= observed - 1e-9 * (1.0 + std::abs(observed)))
      exact_tail += static_cast<double>(count);
  }
  exact_tail /= static_cast<double>(jd.total);

  const int b = 100000;
  const double p = permutation_pvalue(g, lv, StatKind::kGet, b, 31);
  const double se = std::sqrt(exact_tail * (1.0 - exact_tail) / b);
  CHECK(std::abs(p - exact_tail) <= 3.0 * se + 2.0 / b);
}

TEST_CASE("two-sample test end to end") {
  Rng rng(2026);
  const Dataset x = oracle::random_dataset(rng, 20, 4);
  Dataset y = oracle::random_dataset(rng, 22, 4);

  TestConfig cfg;
  cfg.graph = GraphKind::kKrnng;
  cfg.k = 3;
  cfg.seed = 55;

  SUBCASE("asymptotic p-value matches the survival function") {
    const TestResult r = two_sample_test(x, y, cfg);
    CHECK(r.m == 20);
    CHECK(r.n == 22);
    CHECK(r.pvalue == doctest::Approx(chi2_2_survival(r.statistic.value)).epsilon(1e-12));
    CHECK(r.lambda_check.has_value());
    CHECK_FALSE(r.degenerate);

    const TestResult again = two_sample_test(x, y, cfg);
    CHECK(again.statistic.value == r.statistic.value);
    CHECK(again.pvalue == r.pvalue);
  }
  SUBCASE("a strong shift is detected") {
    y.values.array() += 10.0;
    const TestResult r = two_sample_test(x, y, cfg);
    CHECK(r.pvalue < 1e-4);
    CHECK(r.significant);
  }
  SUBCASE("permutation mode") {
    cfg.mode = PValueMode::kPermutation;
    cfg.permutations = 199;
    const TestResult r = two_sample_test(x, y, cfg);
    CHECK(r.pvalue >= 1.0 / 200.0);
    CHECK(r.pvalue <= 1.0);
  }
  SUBCASE("max-type has no asymptotic p-value") {
    cfg.statistic = StatKind::kMet;
    CHECK_THROWS_AS(two_sample_test(x, y, cfg), Error);
    cfg.mode = PValueMode::kPermutation;
    cfg.permutations = 99;
    CHECK_NOTHROW(two_sample_test(x, y, cfg));
  }
  SUBCASE("dimension mismatch") {
    const Dataset bad = oracle::random_dataset(rng, 5, 3);
    CHECK_THROWS_AS(two_sample_test(x, bad, cfg), Error);
  }
}

TEST_CASE("degenerate covariance surfaces as a failed test") {
  // complete directed graph: all degrees equal, covariance singular
  Rng rng(17);
  const Dataset ds = oracle::random_dataset(rng, 8, 2);
  const DirectedGraph g = build_knng(neighbor_ranks(pairwise_distances(ds)), 7).graph;
  TestConfig cfg;
  cfg.graph = GraphKind::kKnng;
  cfg.k = 7;
  const TestResult r = test_on_graph(g, make_labels({1, 1, 1, 1, 2, 2, 2, 2}), cfg);
  CHECK(r.degenerate);
  CHECK(r.pvalue == 1.0);
  CHECK_FALSE(r.significant);
  CHECK(!r.note.empty());
  CHECK(std::isnan(r.statistic.value));
}

TEST_CASE("null distribution of the quadratic statistic approaches chi-square(2)") {
  // fixed penalized graph at N=200; the permutation law of S should have
  // mean near 2 and a 5% tail near the chi-square(2) critical value
  Rng rng(515);
  const Dataset ds = oracle::random_dataset(rng, 200, 50);
  TestConfig cfg;
  cfg.graph = GraphKind::kKrnng;
  cfg.k = 5;
  cfg.lambda = 0.3;
  cfg.seed = 515;
  const BuiltGraph built = build_graph(ds, cfg);
  const NullMoments nm = permutation_null_moments(built.graph, 100);
  REQUIRE(statistic_defined(StatKind::kGet, nm));

  const int reps = 2000;
  double mean = 0.0;
  int tail = 0;
  for (int rep = 0; rep < reps; ++rep) {
    Rng perm_rng(derive_seed(515, 1, static_cast<std::uint64_t>(rep)));
    std::vector<int> labels(200, 2);
    for (int i : perm_rng.sample_without_replacement(200, 100))
      labels[static_cast<std::size_t>(i)] = 1;
    const double s =
        get_statistic(edge_counts(built.graph, make_labels(labels)), nm).value;
    mean += s;
    if (s > 5.991) ++tail;
  }
  mean /= reps;
  const double tail_rate = static_cast<double>(tail) / reps;
  CHECK(std::abs(mean - 2.0) <= 0.15);
  CHECK(std::abs(tail_rate - 0.05) <= 0.015);
}
