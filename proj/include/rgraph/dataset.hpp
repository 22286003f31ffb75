#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "rgraph/error.hpp"

namespace rgraph {

/// Observation matrix, one row per observation. Row order is preserved
/// exactly as read; change-point mode relies on it being the time order.
struct Dataset {
  Eigen::MatrixXd values;            // N x d
  std::vector<std::string> row_ids;  // size N
  std::vector<int> labels;           // empty, or size N with values 1/2

  int n() const { return static_cast<int>(values.rows()); }
  int dim() const { return static_cast<int>(values.cols()); }
  bool has_labels() const { return !labels.empty(); }
};

enum class Metric { kEuclidean, kSquaredEuclidean, kL1 };

const char* metric_name(Metric metric);
Metric metric_from_name(const std::string& name);

struct DistanceMatrix {
  Eigen::MatrixXd values;  // N x N, symmetric, zero diagonal
  Metric metric = Metric::kEuclidean;

  int n() const { return static_cast<int>(values.rows()); }
};

/// Neighbor ranks: entry (i, j) is the rank of the distance from i to j
/// among all distances from i, values 1..N-1. Diagonal holds 0 as a
/// sentinel. Ties are broken by the smaller observation index receiving
/// the smaller rank, so results are reproducible on data with duplicates.
struct RankMatrix {
  Eigen::MatrixXi ranks;

  int n() const { return static_cast<int>(ranks.rows()); }
};

struct CsvOptions {
  bool has_header = false;
  std::string label_column;  // requires has_header when non-empty
  char delimiter = ',';
};

/// Parses CSV text: rows are observations, columns are features. Accepted
/// label values are X/Y or 1/2.
Dataset load_dataset(std::istream& in, const CsvOptions& options = {});
Dataset load_dataset_file(const std::string& path, const CsvOptions& options = {});

DistanceMatrix pairwise_distances(const Dataset& ds, Metric metric = Metric::kEuclidean);

RankMatrix neighbor_ranks(const DistanceMatrix& dm);

/// Concatenates the rows of x then y, labeling them 1 and 2.
Dataset pool_datasets(const Dataset& x, const Dataset& y);

}  // namespace rgraph
