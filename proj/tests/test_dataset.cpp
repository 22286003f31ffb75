#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "rgraph/dataset.hpp"

using namespace rgraph;

namespace {

Dataset line_points() {
  std::istringstream in("0\n1\n3\n");
  return load_dataset(in);
}

}  // namespace

TEST_CASE("csv: three rows, one column") {
  const Dataset ds = line_points();
  CHECK(ds.n() == 3);
  CHECK(ds.dim() == 1);
  CHECK(ds.values(2, 0) == 3.0);
  CHECK(ds.row_ids == std::vector<std::string>{"1", "2", "3"});
  CHECK_FALSE(ds.has_labels());
}

TEST_CASE("csv: label column") {
  std::istringstream in("v,group\n0.5,X\n1.5,X\n2.5,Y\n");
  CsvOptions options;
  options.has_header = true;
  options.label_column = "group";
  const Dataset ds = load_dataset(in, options);
  CHECK(ds.n() == 3);
  CHECK(ds.dim() == 1);
  CHECK(ds.labels == std::vector<int>{1, 1, 2});
}

TEST_CASE("csv: numeric labels and crlf") {
  std::istringstream in("v,group\r\n1,1\r\n2,2\r\n");
  CsvOptions options;
  options.has_header = true;
  options.label_column = "group";
  const Dataset ds = load_dataset(in, options);
  CHECK(ds.labels == std::vector<int>{1, 2});
}

TEST_CASE("csv: error paths") {
  SUBCASE("non-numeric cell") {
    std::istringstream in("1\nabc\n3\n");
    CHECK_THROWS_WITH_AS(load_dataset(in), doctest::Contains("non-numeric"), Error);
  }
  SUBCASE("empty input") {
    std::istringstream in("");
    CHECK_THROWS_AS(load_dataset(in), Error);
  }
  SUBCASE("ragged row") {
    std::istringstream in("1,2\n3\n");
    CHECK_THROWS_WITH_AS(load_dataset(in), doctest::Contains("ragged"), Error);
  }
  SUBCASE("unknown label value") {
    std::istringstream in("v,group\n1,X\n2,Q\n");
    CsvOptions options;
    options.has_header = true;
    options.label_column = "group";
    CHECK_THROWS_WITH_AS(load_dataset(in, options), doctest::Contains("unknown label"), Error);
  }
  SUBCASE("label column missing") {
    std::istringstream in("v\n1\n2\n");
    CsvOptions options;
    options.has_header = true;
    options.label_column = "group";
    CHECK_THROWS_AS(load_dataset(in, options), Error);
  }
  SUBCASE("label column without header") {
    std::istringstream in("1\n2\n");
    CsvOptions options;
    options.label_column = "group";
    CHECK_THROWS_AS(load_dataset(in, options), Error);
  }
}

TEST_CASE("pairwise distances on a line") {
  const Dataset ds = line_points();

  const DistanceMatrix euclid = pairwise_distances(ds);
  CHECK(euclid.values(0, 1) == 1.0);
  CHECK(euclid.values(0, 2) == 3.0);
  CHECK(euclid.values(1, 2) == 2.0);
  for (int i = 0; i < 3; ++i) CHECK(euclid.values(i, i) == 0.0);

  const DistanceMatrix squared = pairwise_distances(ds, Metric::kSquaredEuclidean);
  CHECK(squared.values(0, 1) == 1.0);
  CHECK(squared.values(0, 2) == 9.0);
  CHECK(squared.values(1, 2) == 4.0);

  const DistanceMatrix l1 = pairwise_distances(ds, Metric::kL1);
  CHECK(l1.values(0, 2) == 3.0);
}

TEST_CASE("pairwise distances require two rows") {
  Dataset ds;
  ds.values.resize(1, 2);
  ds.values.setZero();
  ds.row_ids = {"1"};
  CHECK_THROWS_AS(pairwise_distances(ds), Error);
}

TEST_CASE("neighbor ranks on a line") {
  const RankMatrix rm = neighbor_ranks(pairwise_distances(line_points()));
  // node 1: nearest is node 2, then node 3
  CHECK(rm.ranks(0, 1) == 1);
  CHECK(rm.ranks(0, 2) == 2);
  // node 2: distances 1 and 2
  CHECK(rm.ranks(1, 0) == 1);
  CHECK(rm.ranks(1, 2) == 2);
  // node 3: nearest is node 2
  CHECK(rm.ranks(2, 1) == 1);
  CHECK(rm.ranks(2, 0) == 2);
}

TEST_CASE("neighbor ranks: ties broken by index") {
  std::istringstream in("0\n0\n5\n");
  const RankMatrix rm = neighbor_ranks(pairwise_distances(load_dataset(in)));
  // node 3 is at distance 5 from both; the smaller index gets rank 1
  CHECK(rm.ranks(2, 0) == 1);
  CHECK(rm.ranks(2, 1) == 2);
}

TEST_CASE("rank rows are permutations and ranks are order-invariant") {
  Rng rng(404);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(3, 40));
    const int d = static_cast<int>(rng.uniform_int(1, 8));
    const Dataset ds = oracle::random_dataset(rng, n, d);
    const DistanceMatrix dm = pairwise_distances(ds);

    // symmetry and zero diagonal hold exactly
    for (int i = 0; i < n; ++i) {
      CHECK(dm.values(i, i) == 0.0);
      for (int j = 0; j < n; ++j) CHECK(dm.values(i, j) == dm.values(j, i));
    }

    const RankMatrix rm = neighbor_ranks(dm);
    for (int i = 0; i < n; ++i) {
      std::vector<int> row;
      for (int j = 0; j < n; ++j)
        if (j != i) row.push_back(rm.ranks(i, j));
      std::sort(row.begin(), row.end());
      for (int r = 0; r < n - 1; ++r) CHECK(row[static_cast<std::size_t>(r)] == r + 1);
    }

    // strictly increasing transform of all distances leaves ranks unchanged
    DistanceMatrix warped = dm;
    warped.values = dm.values.unaryExpr([](double v) { return v / (1.0 + v) + std::sqrt(v); });
    const RankMatrix rm2 = neighbor_ranks(warped);
    CHECK(rm.ranks == rm2.ranks);
  }
}
