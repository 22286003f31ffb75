#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "rgraph/dataset.hpp"
#include "rgraph/rng.hpp"

namespace rgraph {

enum class GraphKind { kKnng, kKmst, kKrnng };

const char* graph_kind_name(GraphKind kind);
GraphKind graph_kind_from_name(const std::string& name);

/// Directed edge list, 0-based node ids. K-MST edges are stored with the
/// canonical orientation i < j and the graph is semantically undirected.
struct DirectedGraph {
  int n_nodes = 0;
  GraphKind kind = GraphKind::kKnng;
  std::vector<std::pair<int, int>> edges;

  std::int64_t n_edges() const { return static_cast<std::int64_t>(edges.size()); }
};

/// Out-neighbor sets C_i, each of size K, sorted ascending. Only defined
/// for the nearest-neighbor style graphs.
struct NeighborSets {
  std::vector<std::vector<int>> out;

  int n_nodes() const { return static_cast<int>(out.size()); }
  int k() const { return out.empty() ? 0 : static_cast<int>(out.front().size()); }
};

struct KnngResult {
  DirectedGraph graph;
  NeighborSets neighbors;
};

/// Each node points to the K observations with neighbor ranks 1..K; this
/// edge set minimizes the total neighbor-rank sum.
KnngResult build_knng(const RankMatrix& ranks, int k);

/// Union of K successive minimum spanning trees, each built by Kruskal on
/// the edges unused by the previous trees. Distance ties are resolved by
/// the (i, j) order of the edges in the sort.
DirectedGraph build_kmst(const DistanceMatrix& dist, int k);

/// Rank-sum plus lambda times the sum of squared total degrees; degrees
/// are recomputed from the neighbor sets (out-degree plus induced in-degree).
double objective_value(const NeighborSets& ns, const RankMatrix& ranks, double lambda);

struct KrnngOptions {
  double lambda = 0.3;
  std::uint64_t seed = kDefaultSeed;
  int max_passes = 100;
};

struct KrnngResult {
  DirectedGraph graph;
  NeighborSets neighbors;
  /// Initial objective followed by the objective after each accepted move;
  /// strictly decreasing.
  std::vector<double> objective_trace;
  std::int64_t rank_sum = 0;       // final rank-sum term
  std::int64_t degree_sq_sum = 0;  // final sum of squared degrees
  int passes = 0;
  bool converged = true;  // false when max_passes ran out before a clean pass
};

/// Greedy descent on the hub-penalized objective. Starts from the K-NNG;
/// every pass visits the nodes in a fresh random order, rescores each
/// node's candidate neighbors, and accepts the move only when the full
/// objective strictly decreases. Stops after a pass with no accepted move.
KrnngResult build_krnng(const RankMatrix& ranks, int k, const KrnngOptions& options = {});

struct GraphStats {
  int n_nodes = 0;
  std::int64_t n_edges = 0;
  std::vector<int> degree;              // in-degree + out-degree per node
  std::vector<double> centered_degree;  // degree_i - 2|G|/N
  std::int64_t sum_degree_sq = 0;
  double degree_variation = 0.0;  // sum of squared centered degrees
  std::int64_t mutual_edges = 0;  // directed edges whose reverse is present
  int max_degree = 0;
  std::vector<std::int64_t> degree_histogram;  // index = degree value
};

GraphStats graph_stats(const DirectedGraph& g);

/// Quantities entering the chi-square limit conditions, with their ratios
/// against the normalizers they must be dominated by. Ratios are NaN when
/// the normalizer vanishes; `degenerate_degrees` marks the all-degrees-equal
/// regime where the two-dimensional edge-count statistic is undefined.
struct DiagnosticsReport {
  std::int64_t sum_degree_sq = 0;
  double sum_abs_centered_cubed = 0.0;
  double sum_centered_cubed = 0.0;
  /// For every node, the sum of centered-degree products over ordered pairs
  /// of distinct neighbors.
  double neighbor_cross_term = 0.0;
  /// Number of 4-edge subsets whose underlying undirected edges form a
  /// simple 4-cycle on 4 distinct nodes (orientation ignored, parallel
  /// directed edges counted as distinct). Skipped above the size cap.
  std::optional<std::int64_t> square_count;
  double degree_dist_variance = 0.0;  // variance of the degree distribution
  int max_degree = 0;
  double ratio_degree_sq = 0.0;          // vs |G|^(3/2)
  double ratio_abs_centered_cubed = 0.0; // vs V_G^(3/2)
  double ratio_centered_cubed = 0.0;     // vs V_G * sqrt(|G|)
  double ratio_cross = 0.0;              // vs |G| * V_G
  double ratio_square = 0.0;             // vs |G|^2
  bool degenerate_degrees = false;
};

DiagnosticsReport condition_diagnostics(const DirectedGraph& g, int square_count_cap = 100);

/// Edge list CSV with 1-based ids, header "i,j".
void write_edge_csv(const DirectedGraph& g, std::ostream& os);

}  // namespace rgraph
