#pragma once

#include <cstdint>
#include <vector>

#include "rgraph/inference.hpp"

namespace rgraph {

struct ScanConfig {
  GraphKind graph = GraphKind::kKrnng;
  int k = 5;
  double lambda = 0.3;
  StatKind statistic = StatKind::kGet;
  int permutations = 1000;
  std::uint64_t seed = kDefaultSeed;
  double alpha = 0.05;
  Metric metric = Metric::kEuclidean;
  int max_passes = 100;
  /// Boundary fraction w: candidate split times run over
  /// [ceil(w*N), floor((1-w)*N)], clamped to [2, N-2] so the permutation
  /// moments stay defined.
  double boundary = 0.05;
};

void validate(const ScanConfig& cfg);
TestConfig to_test_config(const ScanConfig& cfg);

struct ScanPoint {
  int t = 0;          // first t rows labeled sample 1
  double value = 0.0;
  bool skipped = false;  // statistic undefined at this split
};

struct ScanResult {
  std::vector<ScanPoint> curve;
  int tau_hat = 0;  // argmax split; the change is estimated after this row
  double max_statistic = 0.0;
  double pvalue = 1.0;
  bool significant = false;
  int window_lo = 0, window_hi = 0;
  int n_skipped = 0;
  GraphSummary graph;
};

/// Offline single change-point scan: builds the graph once on the whole
/// time-ordered sequence, evaluates the two-sample statistic at every
/// candidate split in the window, and calibrates the maximum by permuting
/// the row order on the fixed graph.
ScanResult scan(const Dataset& seq, const ScanConfig& cfg);

/// The per-split statistic curve for a fixed graph (no permutation loop).
std::vector<ScanPoint> scan_curve(const DirectedGraph& g, int window_lo, int window_hi,
                                  StatKind kind);

}  // namespace rgraph
