#include "rgraph/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <unordered_set>

namespace rgraph {

const char* graph_kind_name(GraphKind kind) {
  switch (kind) {
    case GraphKind::kKnng: return "knng";
    case GraphKind::kKmst: return "kmst";
    case GraphKind::kKrnng: return "krnng";
  }
  return "unknown";
}

GraphKind graph_kind_from_name(const std::string& name) {
  if (name == "knng") return GraphKind::kKnng;
  if (name == "kmst") return GraphKind::kKmst;
  if (name == "krnng") return GraphKind::kKrnng;
  fail(ErrorCode::kInvalidArgument, "unknown graph kind: " + name);
}

namespace {

std::uint64_t edge_key(int i, int j) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) |
         static_cast<std::uint32_t>(j);
}

DirectedGraph graph_from_neighbor_sets(const NeighborSets& ns, GraphKind kind) {
  DirectedGraph g;
  g.n_nodes = ns.n_nodes();
  g.kind = kind;
  g.edges.reserve(static_cast<std::size_t>(g.n_nodes) * static_cast<std::size_t>(ns.k()));
  for (int i = 0; i < g.n_nodes; ++i)
    for (int j : ns.out[static_cast<std::size_t>(i)]) g.edges.emplace_back(i, j);
  return g;
}

/// Total degrees (out + induced in) from neighbor sets.
std::vector<int> degrees_from_neighbor_sets(const NeighborSets& ns) {
  const int n = ns.n_nodes();
  const int k = ns.k();
  std::vector<int> degree(static_cast<std::size_t>(n), k);
  for (int i = 0; i < n; ++i)
    for (int j : ns.out[static_cast<std::size_t>(i)]) ++degree[static_cast<std::size_t>(j)];
  return degree;
}

void validate_neighbor_sets(const NeighborSets& ns, int n) {
  require(ns.n_nodes() == n, ErrorCode::kInvalidArgument, "neighbor sets: wrong node count");
  const int k = ns.k();
  for (int i = 0; i < n; ++i) {
    const auto& out = ns.out[static_cast<std::size_t>(i)];
    require(static_cast<int>(out.size()) == k, ErrorCode::kInvalidArgument,
            "neighbor sets: inconsistent out-degree");
    for (std::size_t p = 0; p < out.size(); ++p) {
      require(out[p] >= 0 && out[p] < n && out[p] != i, ErrorCode::kInvalidArgument,
              "neighbor sets: invalid neighbor id");
      require(p == 0 || out[p] > out[p - 1], ErrorCode::kInvalidArgument,
              "neighbor sets: neighbors must be sorted and distinct");
    }
  }
}

}  // namespace

KnngResult build_knng(const RankMatrix& ranks, int k) {
  const int n = ranks.n();
  require(k >= 1 && k <= n - 1, ErrorCode::kInvalidArgument,
          "k must be in [1, N-1], got " + std::to_string(k));

  KnngResult result;
  result.neighbors.out.assign(static_cast<std::size_t>(n), {});
  for (int i = 0; i < n; ++i) {
    auto& out = result.neighbors.out[static_cast<std::size_t>(i)];
    out.reserve(static_cast<std::size_t>(k));
    for (int j = 0; j < n; ++j) {
      if (j != i && ranks.ranks(i, j) <= k) out.push_back(j);
    }
  }
  result.graph = graph_from_neighbor_sets(result.neighbors, GraphKind::kKnng);
  return result;
}

DirectedGraph build_kmst(const DistanceMatrix& dist, int k) {
  const int n = dist.n();
  require(k >= 1, ErrorCode::kInvalidArgument, "k must be at least 1");

  struct PairEdge {
    double d;
    int i, j;
  };
  std::vector<PairEdge> all;
  all.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) all.push_back({dist.values(i, j), i, j});
  std::sort(all.begin(), all.end(), [](const PairEdge& a, const PairEdge& b) {
    if (a.d != b.d) return a.d < b.d;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });

  std::vector<bool> used(all.size(), false);
  std::vector<int> parent(static_cast<std::size_t>(n));
  const auto find_root = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };

  DirectedGraph g;
  g.n_nodes = n;
  g.kind = GraphKind::kKmst;
  g.edges.reserve(static_cast<std::size_t>(k) * static_cast<std::size_t>(n - 1));

  for (int tree = 0; tree < k; ++tree) {
    std::iota(parent.begin(), parent.end(), 0);
    int added = 0;
    for (std::size_t e = 0; e < all.size() && added < n - 1; ++e) {
      if (used[e]) continue;
      const int ra = find_root(all[e].i);
      const int rb = find_root(all[e].j);
      if (ra == rb) continue;
      parent[static_cast<std::size_t>(ra)] = rb;
      used[e] = true;
      g.edges.emplace_back(all[e].i, all[e].j);
      ++added;
    }
    require(added == n - 1, ErrorCode::kKTooLarge,
            "k=" + std::to_string(k) + " is too large: spanning tree " +
                std::to_string(tree + 1) + " cannot be completed from the remaining edges");
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

double objective_value(const NeighborSets& ns, const RankMatrix& ranks, double lambda) {
  const int n = ranks.n();
  require(lambda >= 0.0, ErrorCode::kInvalidArgument, "lambda must be nonnegative");
  validate_neighbor_sets(ns, n);

  std::int64_t rank_sum = 0;
  for (int i = 0; i < n; ++i)
    for (int j : ns.out[static_cast<std::size_t>(i)]) rank_sum += ranks.ranks(i, j);

  const auto degree = degrees_from_neighbor_sets(ns);
  std::int64_t degree_sq = 0;
  for (int d : degree) degree_sq += static_cast<std::int64_t>(d) * d;

  return static_cast<double>(rank_sum) + lambda * static_cast<double>(degree_sq);
}

KrnngResult build_krnng(const RankMatrix& ranks, int k, const KrnngOptions& options) {
  const int n = ranks.n();
  require(k >= 1 && k <= n - 1, ErrorCode::kInvalidArgument,
          "k must be in [1, N-1], got " + std::to_string(k));
  require(options.lambda >= 0.0, ErrorCode::kInvalidArgument, "lambda must be nonnegative");
  require(options.max_passes >= 1, ErrorCode::kInvalidArgument, "max_passes must be positive");
  const double lambda = options.lambda;

  KrnngResult result;
  {
    KnngResult init = build_knng(ranks, k);
    result.neighbors = std::move(init.neighbors);
  }
  auto& out = result.neighbors.out;

  // Exact integer state; the objective is rank_sum + lambda * degree_sq_sum,
  // so an incremental update reproduces a full recomputation bit for bit.
  std::vector<int> degree = degrees_from_neighbor_sets(result.neighbors);
  std::int64_t rank_sum = 0;
  for (int i = 0; i < n; ++i)
    for (int j : out[static_cast<std::size_t>(i)]) rank_sum += ranks.ranks(i, j);
  std::int64_t degree_sq = 0;
  for (int d : degree) degree_sq += static_cast<std::int64_t>(d) * d;

  double objective = static_cast<double>(rank_sum) + lambda * static_cast<double>(degree_sq);
  result.objective_trace.push_back(objective);

  Rng rng(options.seed);
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);

  std::vector<std::pair<double, int>> scored;
  scored.reserve(static_cast<std::size_t>(n) - 1);
  std::vector<char> is_neighbor(static_cast<std::size_t>(n), 0);
  std::vector<int> candidate;

  for (result.passes = 0; result.passes < options.max_passes; ++result.passes) {
    rng.shuffle(order);  // fresh node order every pass
    bool any_accepted = false;

    for (int node : order) {
      auto& current = out[static_cast<std::size_t>(node)];
      for (int j : current) is_neighbor[static_cast<std::size_t>(j)] = 1;

      // Score every candidate: its neighbor rank plus the penalty its
      // squared degree would contribute if the node pointed to it.
      scored.clear();
      for (int j = 0; j < n; ++j) {
        if (j == node) continue;
        const int deg_without =
            degree[static_cast<std::size_t>(j)] - is_neighbor[static_cast<std::size_t>(j)];
        const double w = static_cast<double>(ranks.ranks(node, j)) +
                         lambda * static_cast<double>(deg_without + 1) *
                             static_cast<double>(deg_without + 1);
        scored.emplace_back(w, j);
      }
      std::partial_sort(scored.begin(), scored.begin() + k, scored.end(),
                        [](const auto& a, const auto& b) {
                          if (a.first != b.first) return a.first < b.first;
                          return a.second < b.second;  // ties: smaller index wins
                        });
      candidate.assign(k, 0);
      for (int p = 0; p < k; ++p) candidate[static_cast<std::size_t>(p)] = scored[static_cast<std::size_t>(p)].second;
      std::sort(candidate.begin(), candidate.end());

      // Exact objective delta for swapping the node's out-set.
      std::int64_t delta_rank = 0;
      std::int64_t delta_degree_sq = 0;
      for (int j : candidate) {
        delta_rank += ranks.ranks(node, j);
        if (!is_neighbor[static_cast<std::size_t>(j)])
          delta_degree_sq += 2 * static_cast<std::int64_t>(degree[static_cast<std::size_t>(j)]) + 1;
      }
      {
        // lost neighbors: in current but not in candidate
        std::size_t ci = 0;
        for (int j : current) {
          while (ci < candidate.size() && candidate[ci] < j) ++ci;
          const bool kept = ci < candidate.size() && candidate[ci] == j;
          delta_rank -= ranks.ranks(node, j);
          if (!kept)
            delta_degree_sq += 1 - 2 * static_cast<std::int64_t>(degree[static_cast<std::size_t>(j)]);
        }
      }

      const std::int64_t new_rank_sum = rank_sum + delta_rank;
      const std::int64_t new_degree_sq = degree_sq + delta_degree_sq;
      const double candidate_objective =
          static_cast<double>(new_rank_sum) + lambda * static_cast<double>(new_degree_sq);

      if (candidate_objective < objective) {
        // apply the move
        for (int j : current) --degree[static_cast<std::size_t>(j)];
        for (int j : candidate) ++degree[static_cast<std::size_t>(j)];
        for (int j : current) is_neighbor[static_cast<std::size_t>(j)] = 0;
        current = candidate;
        rank_sum = new_rank_sum;
        degree_sq = new_degree_sq;
        objective = candidate_objective;
        result.objective_trace.push_back(objective);
        any_accepted = true;
      } else {
        for (int j : current) is_neighbor[static_cast<std::size_t>(j)] = 0;
      }
    }

    if (!any_accepted) {
      ++result.passes;
      result.converged = true;
      result.graph = graph_from_neighbor_sets(result.neighbors, GraphKind::kKrnng);
      result.rank_sum = rank_sum;
      result.degree_sq_sum = degree_sq;
      return result;
    }
  }

  result.converged = false;  // max_passes exhausted; result still usable
  result.graph = graph_from_neighbor_sets(result.neighbors, GraphKind::kKrnng);
  result.rank_sum = rank_sum;
  result.degree_sq_sum = degree_sq;
  return result;
}

GraphStats graph_stats(const DirectedGraph& g) {
  const int n = g.n_nodes;
  require(n >= 1, ErrorCode::kInvalidArgument, "empty graph");

  GraphStats s;
  s.n_nodes = n;
  s.n_edges = g.n_edges();
  s.degree.assign(static_cast<std::size_t>(n), 0);

  std::unordered_set<std::uint64_t> present;
  present.reserve(g.edges.size() * 2);
  for (const auto& [i, j] : g.edges) {
    require(i != j && i >= 0 && j >= 0 && i < n && j < n, ErrorCode::kInvalidArgument,
            "invalid edge");
    ++s.degree[static_cast<std::size_t>(i)];
    ++s.degree[static_cast<std::size_t>(j)];
    present.insert(edge_key(i, j));
  }
  for (const auto& [i, j] : g.edges)
    if (present.count(edge_key(j, i))) ++s.mutual_edges;

  const double mean_degree = 2.0 * static_cast<double>(s.n_edges) / n;
  s.centered_degree.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int d = s.degree[static_cast<std::size_t>(i)];
    s.sum_degree_sq += static_cast<std::int64_t>(d) * d;
    s.centered_degree[static_cast<std::size_t>(i)] = d - mean_degree;
    s.max_degree = std::max(s.max_degree, d);
  }
  // V_G = sum deg^2 - 4|G|^2/N, computed from the exact integer pieces
  s.degree_variation = static_cast<double>(s.sum_degree_sq) -
                       4.0 * static_cast<double>(s.n_edges) * static_cast<double>(s.n_edges) / n;

  s.degree_histogram.assign(static_cast<std::size_t>(s.max_degree) + 1, 0);
  for (int d : s.degree) ++s.degree_histogram[static_cast<std::size_t>(d)];
  return s;
}

DiagnosticsReport condition_diagnostics(const DirectedGraph& g, int square_count_cap) {
  const GraphStats s = graph_stats(g);
  const int n = g.n_nodes;

  DiagnosticsReport r;
  r.sum_degree_sq = s.sum_degree_sq;
  r.max_degree = s.max_degree;
  r.degree_dist_variance = s.degree_variation / n;
  r.degenerate_degrees = s.degree_variation <= 0.0;

  for (double c : s.centered_degree) {
    r.sum_abs_centered_cubed += std::abs(c) * c * c;
    r.sum_centered_cubed += c * c * c;
  }

  // Cross term: per node, ordered pairs of distinct adjacent nodes. The
  // (sum^2 - sum of squares) identity keeps this linear in the edge count.
  {
    std::vector<std::vector<int>> adjacent(static_cast<std::size_t>(n));
    for (const auto& [i, j] : g.edges) {
      adjacent[static_cast<std::size_t>(i)].push_back(j);
      adjacent[static_cast<std::size_t>(j)].push_back(i);
    }
    for (int i = 0; i < n; ++i) {
      auto& a = adjacent[static_cast<std::size_t>(i)];
      std::sort(a.begin(), a.end());
      a.erase(std::unique(a.begin(), a.end()), a.end());
      double sum = 0.0, sum_sq = 0.0;
      for (int j : a) {
        const double c = s.centered_degree[static_cast<std::size_t>(j)];
        sum += c;
        sum_sq += c * c;
      }
      r.neighbor_cross_term += sum * sum - sum_sq;
    }
  }

  if (n <= square_count_cap) {
    // Multiplicity of directed edges per unordered node pair.
    std::vector<std::uint8_t> mult(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
    const auto at = [&](int a, int b) -> std::uint8_t& {
      return mult[static_cast<std::size_t>(a) * static_cast<std::size_t>(n) +
                  static_cast<std::size_t>(b)];
    };
    for (const auto& [i, j] : g.edges) {
      const int a = std::min(i, j), b = std::max(i, j);
      ++at(a, b);
    }
    std::int64_t squares = 0;
    const auto m2 = [&](int a, int b) -> std::int64_t {
      return at(std::min(a, b), std::max(a, b));
    };
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = b + 1; c < n; ++c)
          for (int d = c + 1; d < n; ++d) {
            // the three 4-cycles on {a,b,c,d}
            squares += m2(a, b) * m2(b, c) * m2(c, d) * m2(d, a);
            squares += m2(a, b) * m2(b, d) * m2(d, c) * m2(c, a);
            squares += m2(a, c) * m2(c, b) * m2(b, d) * m2(d, a);
          }
    r.square_count = squares;
  }

  const double edges = static_cast<double>(s.n_edges);
  const double vg = s.degree_variation;
  const auto ratio = [](double num, double den) {
    return den > 0.0 ? num / den : std::numeric_limits<double>::quiet_NaN();
  };
  r.ratio_degree_sq = ratio(static_cast<double>(r.sum_degree_sq), std::pow(edges, 1.5));
  r.ratio_abs_centered_cubed = ratio(r.sum_abs_centered_cubed, std::pow(vg, 1.5));
  r.ratio_centered_cubed = ratio(r.sum_centered_cubed, vg * std::sqrt(edges));
  r.ratio_cross = ratio(r.neighbor_cross_term, edges * vg);
  r.ratio_square =
      r.square_count ? ratio(static_cast<double>(*r.square_count), edges * edges)
                     : std::numeric_limits<double>::quiet_NaN();
  return r;
}

void write_edge_csv(const DirectedGraph& g, std::ostream& os) {
  os << "i,j\n";
  for (const auto& [i, j] : g.edges) os << (i + 1) << ',' << (j + 1) << '\n';
}

}  // namespace rgraph
