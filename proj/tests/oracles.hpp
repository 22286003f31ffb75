#pragma once

// Test-only brute-force oracles, kept independent of the library code
// paths they are used to verify.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "rgraph/dataset.hpp"
#include "rgraph/graphs.hpp"
#include "rgraph/rng.hpp"

namespace oracle {

struct WeightedPair {
  int i, j;
  double w;
};

/// All spanning trees of the complete graph on n nodes, as sorted lists of
/// pair indices into `pairs`; feasible only for tiny n.
inline std::vector<std::vector<int>> all_spanning_trees(int n,
                                                        const std::vector<WeightedPair>& pairs) {
  std::vector<std::vector<int>> trees;
  const int e = static_cast<int>(pairs.size());
  std::vector<int> pick(static_cast<std::size_t>(n - 1));
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == n - 1) {
      // connectivity check via union-find
      std::vector<int> parent(static_cast<std::size_t>(n));
      std::iota(parent.begin(), parent.end(), 0);
      const std::function<int(int)> root = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
        return x;
      };
      int components = n;
      for (int idx : pick) {
        const int a = root(pairs[static_cast<std::size_t>(idx)].i);
        const int b = root(pairs[static_cast<std::size_t>(idx)].j);
        if (a != b) {
          parent[static_cast<std::size_t>(a)] = b;
          --components;
        }
      }
      if (components == 1) trees.push_back(pick);
      return;
    }
    for (int idx = start; idx < e; ++idx) {
      pick[static_cast<std::size_t>(depth)] = idx;
      rec(idx + 1, depth + 1);
    }
  };
  rec(0, 0);
  return trees;
}

inline double tree_weight(const std::vector<int>& tree, const std::vector<WeightedPair>& pairs) {
  double w = 0.0;
  for (int idx : tree) w += pairs[static_cast<std::size_t>(idx)].w;
  return w;
}

/// Minimum spanning-tree weight subject to excluding a set of pair indices;
/// nullopt when no spanning tree avoids them.
inline std::optional<double> min_tree_weight_excluding(
    int n, const std::vector<WeightedPair>& pairs, const std::set<int>& excluded) {
  double best = std::numeric_limits<double>::infinity();
  bool found = false;
  for (const auto& tree : all_spanning_trees(n, pairs)) {
    bool ok = true;
    for (int idx : tree)
      if (excluded.count(idx)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    found = true;
    best = std::min(best, tree_weight(tree, pairs));
  }
  if (!found) return std::nullopt;
  return best;
}

inline std::vector<WeightedPair> pairs_from_distances(const rgraph::DistanceMatrix& dm) {
  std::vector<WeightedPair> pairs;
  for (int i = 0; i < dm.n(); ++i)
    for (int j = i + 1; j < dm.n(); ++j) pairs.push_back({i, j, dm.values(i, j)});
  return pairs;
}

/// Direct quadratic-cost recomputation of the neighbor cross term: for each
/// node, loop over ordered pairs of distinct adjacent nodes.
inline double cross_term_direct(const rgraph::DirectedGraph& g,
                                const std::vector<double>& centered) {
  const int n = g.n_nodes;
  std::vector<std::set<int>> adjacent(static_cast<std::size_t>(n));
  for (const auto& [i, j] : g.edges) {
    adjacent[static_cast<std::size_t>(i)].insert(j);
    adjacent[static_cast<std::size_t>(j)].insert(i);
  }
  double total = 0.0;
  for (int i = 0; i < n; ++i)
    for (int a : adjacent[static_cast<std::size_t>(i)])
      for (int b : adjacent[static_cast<std::size_t>(i)])
        if (a != b) total += centered[static_cast<std::size_t>(a)] * centered[static_cast<std::size_t>(b)];
  return total;
}

/// Adaptive Simpson quadrature of the chi-square(2) density over [s, inf),
/// used to validate the closed-form survival function.
inline double chi2_2_survival_quadrature(double s) {
  const auto density = [](double x) { return 0.5 * std::exp(-0.5 * x); };
  const std::function<double(double, double, double, double, double, int)> simpson =
      [&](double a, double b, double fa, double fb, double fm, int depth) -> double {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = density(lm), frm = density(rm);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth > 40 || std::abs(left + right - whole) < 1e-14)
      return left + right + (left + right - whole) / 15.0;
    return simpson(a, m, fa, fm, flm, depth + 1) + simpson(m, b, fm, fb, frm, depth + 1);
  };
  const double upper = s + 120.0;  // tail beyond is below 1e-26
  const double fm = density(0.5 * (s + upper));
  return simpson(s, upper, density(s), density(upper), fm, 0);
}

inline rgraph::Dataset random_dataset(rgraph::Rng& rng, int n, int d) {
  rgraph::Dataset ds;
  ds.values.resize(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) ds.values(i, j) = rng.normal();
  for (int i = 0; i < n; ++i) ds.row_ids.push_back(std::to_string(i + 1));
  return ds;
}

/// Random simple directed graph: distinct ordered pairs, no self loops.
inline rgraph::DirectedGraph random_directed_graph(rgraph::Rng& rng, int n, int n_edges) {
  std::vector<std::pair<int, int>> all;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) all.emplace_back(i, j);
  rng.partial_shuffle(all, static_cast<std::size_t>(n_edges));
  rgraph::DirectedGraph g;
  g.n_nodes = n;
  g.edges.assign(all.begin(), all.begin() + n_edges);
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

inline double sample_skewness(const std::vector<int>& values) {
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (int v : values) mean += v;
  mean /= n;
  double m2 = 0.0, m3 = 0.0;
  for (int v : values) {
    const double c = v - mean;
    m2 += c * c;
    m3 += c * c * c;
  }
  m2 /= n;
  m3 /= n;
  return m2 > 0 ? m3 / std::pow(m2, 1.5) : 0.0;
}

}  // namespace oracle
