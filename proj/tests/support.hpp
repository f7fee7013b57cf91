#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "expgraph/graph.hpp"

// Small fixtures and independent reference code shared by the test binaries.
namespace expgraph::testing {

inline CscGraph two_cycle() {
  const std::vector<Arc> arcs{{0, 1}, {1, 0}};
  return CscGraph::from_arcs(2, arcs);
}

inline CscGraph self_loop() {
  const std::vector<Arc> arcs{{0, 0}};
  return CscGraph::from_arcs(1, arcs);
}

inline CscGraph directed_cycle(std::size_t n) {
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < n; ++i) arcs.push_back({static_cast<node_t>(i), static_cast<node_t>((i + 1) % n)});
  return CscGraph::from_arcs(n, arcs);
}

// 0 -> {1,2,3}, and each leaf back to 0.
inline CscGraph star_with_back_edges() {
  const std::vector<Arc> arcs{{0, 1}, {0, 2}, {0, 3}, {1, 0}, {2, 0}, {3, 0}};
  return CscGraph::from_arcs(4, arcs);
}

// Random directed graph where every node has between 1 and max_out out-links.
inline CscGraph random_digraph(std::size_t n, std::size_t max_out, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> deg(1, max_out);
  std::uniform_int_distribution<node_t> node(0, static_cast<node_t>(n - 1));
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t d = deg(rng);
    for (std::size_t k = 0; k < d; ++k) arcs.push_back({static_cast<node_t>(i), node(rng)});
  }
  return CscGraph::from_arcs(n, arcs);
}

// Dense column-major P and a dense power series, written without the
// library's sparse kernels.
inline std::vector<double> dense_matrix(const CscGraph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<double> a(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto rows = g.column_rows(static_cast<node_t>(j));
    const auto vals = g.column_values(static_cast<node_t>(j));
    for (std::size_t k = 0; k < rows.size(); ++k) a[j * n + rows[k]] += vals[k];
  }
  return a;
}

inline std::vector<double> dense_series_column(const CscGraph& g, node_t c, int terms) {
  const std::size_t n = g.num_nodes();
  const auto a = dense_matrix(g);
  std::vector<double> term(n, 0.0), sum(n, 0.0), next(n);
  term[c] = 1.0;
  sum[c] = 1.0;
  for (int m = 1; m <= terms; ++m) {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += a[j * n + i] * term[j];
      next[i] = acc / m;
    }
    term = next;
    for (std::size_t i = 0; i < n; ++i) sum[i] += term[i];
  }
  return sum;
}

inline double l1_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

}  // namespace expgraph::testing
