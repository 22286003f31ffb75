#include "rgraph/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>

#include "rgraph/parallel.hpp"

namespace rgraph {

const char* metric_name(Metric metric) {
  switch (metric) {
    case Metric::kEuclidean: return "euclidean";
    case Metric::kSquaredEuclidean: return "squared_euclidean";
    case Metric::kL1: return "l1";
  }
  return "unknown";
}

Metric metric_from_name(const std::string& name) {
  if (name == "euclidean") return Metric::kEuclidean;
  if (name == "squared_euclidean") return Metric::kSquaredEuclidean;
  if (name == "l1") return Metric::kL1;
  fail(ErrorCode::kInvalidArgument, "unknown metric: " + name);
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_line(const std::string& line, char delimiter) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, delimiter)) cells.push_back(cell);
  if (!line.empty() && line.back() == delimiter) cells.emplace_back();
  return cells;
}

double parse_cell(const std::string& raw, std::size_t line_no, std::size_t col) {
  const std::string cell = trim(raw);
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  const auto result = std::from_chars(begin, end, value);
  if (result.ec != std::errc() || result.ptr != end || cell.empty()) {
    fail(ErrorCode::kParseError, "non-numeric cell '" + cell + "' at line " +
                                     std::to_string(line_no) + ", column " +
                                     std::to_string(col + 1));
  }
  if (!std::isfinite(value)) {
    fail(ErrorCode::kParseError, "non-finite value at line " + std::to_string(line_no));
  }
  return value;
}

int parse_label(const std::string& raw, std::size_t line_no) {
  const std::string cell = trim(raw);
  if (cell == "X" || cell == "1") return 1;
  if (cell == "Y" || cell == "2") return 2;
  fail(ErrorCode::kParseError,
       "unknown label value '" + cell + "' at line " + std::to_string(line_no) +
           " (expected X, Y, 1 or 2)");
}

}  // namespace

Dataset load_dataset(std::istream& in, const CsvOptions& options) {
  require(options.label_column.empty() || options.has_header, ErrorCode::kInvalidArgument,
          "a label column requires a header row");

  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  require(!lines.empty(), ErrorCode::kParseError, "empty input");

  std::size_t first_data = 0;
  int label_col = -1;
  std::size_t n_cols = 0;
  if (options.has_header) {
    const auto header = split_line(lines[0], options.delimiter);
    n_cols = header.size();
    first_data = 1;
    if (!options.label_column.empty()) {
      for (std::size_t c = 0; c < header.size(); ++c) {
        if (trim(header[c]) == options.label_column) {
          label_col = static_cast<int>(c);
          break;
        }
      }
      require(label_col >= 0, ErrorCode::kParseError,
              "label column '" + options.label_column + "' not found in header");
    }
    require(first_data < lines.size(), ErrorCode::kParseError, "empty input");
  } else {
    n_cols = split_line(lines[0], options.delimiter).size();
  }

  const std::size_t n_rows = lines.size() - first_data;
  const std::size_t n_features = n_cols - (label_col >= 0 ? 1 : 0);
  require(n_features >= 1, ErrorCode::kParseError, "no numeric columns");

  Dataset ds;
  ds.values.resize(static_cast<Eigen::Index>(n_rows), static_cast<Eigen::Index>(n_features));
  ds.row_ids.reserve(n_rows);
  if (label_col >= 0) ds.labels.reserve(n_rows);

  for (std::size_t r = 0; r < n_rows; ++r) {
    const std::size_t line_no = first_data + r + 1;
    const auto cells = split_line(lines[first_data + r], options.delimiter);
    require(cells.size() == n_cols, ErrorCode::kParseError,
            "ragged row at line " + std::to_string(line_no) + ": expected " +
                std::to_string(n_cols) + " cells, got " + std::to_string(cells.size()));
    std::size_t feature = 0;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (static_cast<int>(c) == label_col) {
        ds.labels.push_back(parse_label(cells[c], line_no));
      } else {
        ds.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(feature++)) =
            parse_cell(cells[c], line_no, c);
      }
    }
    ds.row_ids.push_back(std::to_string(r + 1));
  }
  return ds;
}

Dataset load_dataset_file(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::kIoError, "cannot open " + path);
  return load_dataset(in, options);
}

DistanceMatrix pairwise_distances(const Dataset& ds, Metric metric) {
  const int n = ds.n();
  require(n >= 2, ErrorCode::kInvalidArgument, "need at least two observations");

  DistanceMatrix dm;
  dm.metric = metric;
  dm.values = Eigen::MatrixXd::Zero(n, n);

  parallel_for(static_cast<std::size_t>(n), [&](std::size_t ui) {
    const int i = static_cast<int>(ui);
    for (int j = i + 1; j < n; ++j) {
      const auto diff = ds.values.row(i) - ds.values.row(j);
      double d = 0.0;
      switch (metric) {
        case Metric::kEuclidean: d = diff.norm(); break;
        case Metric::kSquaredEuclidean: d = diff.squaredNorm(); break;
        case Metric::kL1: d = diff.cwiseAbs().sum(); break;
      }
      dm.values(i, j) = d;
    }
  });
  // mirror the upper triangle so symmetry holds bit-exactly
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) dm.values(j, i) = dm.values(i, j);

  require(dm.values.allFinite(), ErrorCode::kNumericOverflow,
          "non-finite pairwise distance (numeric overflow)");
  return dm;
}

RankMatrix neighbor_ranks(const DistanceMatrix& dm) {
  const int n = dm.n();
  require(n >= 2, ErrorCode::kInvalidArgument, "need at least two observations");

  RankMatrix rm;
  rm.ranks = Eigen::MatrixXi::Zero(n, n);

  parallel_for(static_cast<std::size_t>(n), [&](std::size_t ui) {
    const int i = static_cast<int>(ui);
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n) - 1);
    for (int j = 0; j < n; ++j)
      if (j != i) order.push_back(j);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const double da = dm.values(i, a);
      const double db = dm.values(i, b);
      if (da != db) return da < db;
      return a < b;  // tie rule: smaller index gets the smaller rank
    });
    for (std::size_t r = 0; r < order.size(); ++r)
      rm.ranks(i, order[r]) = static_cast<int>(r) + 1;
  });
  return rm;
}

Dataset pool_datasets(const Dataset& x, const Dataset& y) {
  require(x.dim() == y.dim(), ErrorCode::kInvalidArgument,
          "samples have different dimensions");
  Dataset pooled;
  pooled.values.resize(x.n() + y.n(), x.dim());
  pooled.values.topRows(x.n()) = x.values;
  pooled.values.bottomRows(y.n()) = y.values;
  pooled.labels.assign(static_cast<std::size_t>(x.n()), 1);
  pooled.labels.insert(pooled.labels.end(), static_cast<std::size_t>(y.n()), 2);
  pooled.row_ids.reserve(static_cast<std::size_t>(pooled.values.rows()));
  for (int i = 0; i < pooled.values.rows(); ++i)
    pooled.row_ids.push_back(std::to_string(i + 1));
  return pooled;
}

}  // namespace rgraph
