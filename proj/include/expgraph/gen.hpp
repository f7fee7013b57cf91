#pragma once

#include <cstdint>

#include "expgraph/graph.hpp"

namespace expgraph {

struct ForestFireConfig {
  std::size_t n_target = 0;
  double p_burn = 0.4;
  std::uint64_t rng_seed = 0;
  // Stop early once this many directed arcs exist (0 = grow to n_target).
  std::uint64_t arc_target = 0;
};

// Symmetric single-probability forest fire. Each arriving node picks a
// uniform ambassador, burns Geometric(1-p) unvisited neighbors of every
// burning node (without replacement, each node at most once per arrival),
// and links to every burned node. Returns unit weights; symmetric arcs.
CscGraph forest_fire(const ForestFireConfig& config);

// Simple d-regular undirected graph by the pairing model with restarts.
// Requires n*d even and d < n.
CscGraph random_regular(std::size_t n, std::size_t degree, std::uint64_t rng_seed);

struct PowerLawFit {
  double slope = 0.0;     // least-squares slope of log d(k) vs log k
  double exponent = 0.0;  // -slope, the p in d(k) ~ C d k^{-p}
  std::uint64_t d_max = 0;
  std::uint64_t d_min = 0;
};

// Fits sorted out-degrees against rank over ranks 1..min(n, 10^4).
PowerLawFit power_law_check(const CscGraph& g);

}  // namespace expgraph
