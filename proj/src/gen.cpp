#include "expgraph/gen.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace expgraph {

namespace {

CscGraph from_adjacency(std::vector<std::vector<node_t>>& adj) {
  const std::size_t n = adj.size();
  std::vector<offset_t> col_ptr(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) col_ptr[i + 1] = col_ptr[i] + adj[i].size();
  std::vector<node_t> row_idx;
  row_idx.reserve(col_ptr[n]);
  for (auto& nbrs : adj) {
    std::sort(nbrs.begin(), nbrs.end());
    row_idx.insert(row_idx.end(), nbrs.begin(), nbrs.end());
    std::vector<node_t>().swap(nbrs);
  }
  std::vector<double> val(row_idx.size(), 1.0);
  return CscGraph(n, std::move(col_ptr), std::move(row_idx), std::move(val));
}

}  // namespace

CscGraph forest_fire(const ForestFireConfig& config) {
  const double p = config.p_burn;
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("burning probability must lie in (0, 1), got " + std::to_string(p));
  }
  if (config.n_target < 2) throw std::invalid_argument("forest fire needs n_target >= 2");
  const std::size_t n = config.n_target;

  std::mt19937_64 rng(config.rng_seed);
  std::geometric_distribution<std::uint64_t> burn_count(1.0 - p);

  std::vector<std::vector<node_t>> adj;
  adj.reserve(n);
  adj.emplace_back();
  // stamp[u] == v marks u as burned during the arrival of v.
  std::vector<node_t> stamp(n, 0);
  std::vector<node_t> burned;
  std::vector<node_t> candidates;
  std::uint64_t arcs = 0;

  for (node_t v = 1; v < n; ++v) {
    const node_t ambassador = std::uniform_int_distribution<node_t>(0, v - 1)(rng);
    burned.clear();
    burned.push_back(ambassador);
    stamp[ambassador] = v;

    for (std::size_t head = 0; head < burned.size(); ++head) {
      const node_t u = burned[head];
      const std::uint64_t want = burn_count(rng);
      if (want == 0) continue;
      const auto& nbrs = adj[u];
      const std::size_t deg = nbrs.size();
      std::uint64_t taken = 0;

      if (deg > 4 * want) {
        // Sparse pick from a large list: rejection sampling, then a scan if unlucky.
        std::uniform_int_distribution<std::size_t> pick(0, deg - 1);
        for (std::uint64_t attempt = 0; attempt < 16 * want && taken < want; ++attempt) {
          const node_t s = nbrs[pick(rng)];
          if (stamp[s] == v) continue;
          stamp[s] = v;
          burned.push_back(s);
          ++taken;
        }
        if (taken == want) continue;
      }
      candidates.clear();
      for (node_t s : nbrs) {
        if (stamp[s] != v) candidates.push_back(s);
      }
      const std::size_t need = std::min<std::size_t>(want - taken, candidates.size());
      for (std::size_t k = 0; k < need; ++k) {
        const std::size_t r = std::uniform_int_distribution<std::size_t>(k, candidates.size() - 1)(rng);
        std::swap(candidates[k], candidates[r]);
        stamp[candidates[k]] = v;
        burned.push_back(candidates[k]);
      }
    }

    adj.emplace_back(burned.begin(), burned.end());
    for (node_t b : burned) adj[b].push_back(v);
    arcs += 2 * burned.size();
    if (config.arc_target && arcs >= config.arc_target) break;
  }
  return from_adjacency(adj);
}

CscGraph random_regular(std::size_t n, std::size_t degree, std::uint64_t rng_seed) {
  if (degree == 0 || degree >= n) throw std::invalid_argument("regular degree must lie in [1, n)");
  if ((n * degree) % 2 != 0) throw std::invalid_argument("n * degree must be even");
  std::mt19937_64 rng(rng_seed);
  std::vector<node_t> stubs;
  stubs.reserve(n * degree);
  for (std::size_t i = 0; i < n; ++i) stubs.insert(stubs.end(), degree, static_cast<node_t>(i));

  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::set<std::pair<node_t, node_t>> edges;
    bool simple = true;
    for (std::size_t k = 0; k < stubs.size(); k += 2) {
      const node_t a = std::min(stubs[k], stubs[k + 1]);
      const node_t b = std::max(stubs[k], stubs[k + 1]);
      if (a == b || !edges.emplace(a, b).second) {
        simple = false;
        break;
      }
    }
    if (!simple) continue;
    std::vector<std::vector<node_t>> adj(n);
    for (const auto& [a, b] : edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    return from_adjacency(adj);
  }
  throw std::runtime_error("pairing model failed to produce a simple regular graph");
}

PowerLawFit power_law_check(const CscGraph& g) {
  PowerLawFit fit;
  const auto deg = g.out_degree();
  if (deg.empty()) return fit;
  std::vector<std::uint64_t> sorted(deg.begin(), deg.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  fit.d_max = sorted.front();
  fit.d_min = sorted.back();

  const std::size_t m = std::min<std::size_t>(sorted.size(), 10'000);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t count = 0;
  for (std::size_t k = 0; k < m; ++k) {
    if (sorted[k] == 0) break;
    const double x = std::log(static_cast<double>(k + 1));
    const double y = std::log(static_cast<double>(sorted[k]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count >= 2) {
    const double c = static_cast<double>(count);
    const double denom = c * sxx - sx * sx;
    if (denom > 0.0) fit.slope = (c * sxy - sx * sy) / denom;
  }
  fit.exponent = -fit.slope;
  return fit;
}

}  // namespace expgraph
