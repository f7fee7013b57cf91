#include "expgraph/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "expgraph/residual_heap.hpp"

namespace expgraph {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kNormTol = 1e-12;

void check_seed(const CscGraph& g, node_t c) {
  if (c >= g.num_nodes()) {
    throw std::out_of_range("seed node " + std::to_string(c) + " out of range for n = " +
                            std::to_string(g.num_nodes()));
  }
}

void check_contractive(const CscGraph& g) {
  if (g.one_norm() > 1.0 + kNormTol) {
    throw SolverError("matrix 1-norm " + std::to_string(g.one_norm()) +
                      " exceeds 1; normalize the graph to a stochastic matrix first");
  }
}

std::uint64_t safety_cap(const CscGraph& g, const SolveOptions& opts) {
  return opts.safety_cap ? opts.safety_cap : 100 * std::max<std::uint64_t>(g.nnz(), 1);
}

void finish(SolveReport& r, const CscGraph& g, Clock::time_point start) {
  r.effective_matvecs =
      g.nnz() ? static_cast<double>(r.edge_touches) / static_cast<double>(g.nnz()) : 0.0;
  r.wallclock = std::chrono::duration<double>(Clock::now() - start).count();
}

double heap_weighted_sum(const ResidualHeap& heap, std::span<const double> psi) {
  double sum = 0.0;
  for (const auto& item : heap.items()) sum += psi[key_block(item.key)] * std::abs(item.value);
  return sum;
}

double map_weighted_sum(const std::unordered_map<std::uint64_t, double>& resid,
                        std::span<const double> psi) {
  std::vector<std::pair<std::uint64_t, double>> items(resid.begin(), resid.end());
  std::sort(items.begin(), items.end());
  double sum = 0.0;
  for (const auto& [key, v] : items) sum += psi[key_block(key)] * std::abs(v);
  return sum;
}

}  // namespace

double weighted_residual_sum(std::span<const ResidualEntry> residual, std::span<const double> psi) {
  double sum = 0.0;
  for (const auto& e : residual) sum += psi[e.block] * std::abs(e.value);
  return sum;
}

SolveReport gexpm(const CscGraph& g, node_t c, double eps, const SolveOptions& opts) {
  const auto start = Clock::now();
  check_seed(g, c);
  const TaylorParams params = make_taylor_params(eps, opts.rule);
  check_contractive(g);
  const std::span<const double> psi = params.psi;
  const double tol = params.solver_tolerance();
  const std::uint64_t cap = safety_cap(g, opts);

  SolveReport rep;
  rep.degree = params.degree;
  ResidualHeap heap;
  heap.add(0, c, 1.0);
  double tracker = psi[0];

  auto add_residual = [&heap](int block, node_t u, double amount) {
    const double old = heap.add(block, u, amount);
    return std::abs(old + amount) - std::abs(old);
  };

  for (;;) {
    if (heap.empty()) {
      tracker = 0.0;
      rep.converged = true;
      break;
    }
    if (tracker <= tol) {
      // The running sum drifts by rounding; certify against a fresh total.
      tracker = heap_weighted_sum(heap, psi);
      if (tracker <= tol) {
        rep.converged = true;
        break;
      }
    }
    if (opts.max_steps && rep.steps >= opts.max_steps) break;
    if (rep.steps >= cap) {
      throw SolverError("gexpm exceeded the relaxation cap of " + std::to_string(cap) + " steps");
    }

    if (opts.audit) {
      if (!heap.check_invariants()) throw std::logic_error("gexpm: residual heap inconsistent");
      double scan_max = 0.0;
      for (const auto& item : heap.items()) scan_max = std::max(scan_max, std::abs(item.value));
      if (std::abs(heap.top().value) != scan_max) {
        throw std::logic_error("gexpm: heap top is not the largest residual entry");
      }
    }

    const HeapItem top = heap.pop_top();
    const int j = key_block(top.key);
    const node_t i = key_node(top.key);
    tracker += relax_step(g, psi, j, i, top.value, rep.x, add_residual);
    ++rep.steps;
    if (j < params.degree) rep.edge_touches += g.out_degree(i);
    if (opts.record_trace) rep.trace.push_back({j, i, top.value, tracker});
  }

  rep.final_tracker = tracker;
  if (opts.keep_residual) {
    for (const auto& item : heap.items()) {
      rep.residual.push_back({key_block(item.key), key_node(item.key), item.value});
    }
  }
  finish(rep, g, start);
  return rep;
}

SolveReport gexpmq(const CscGraph& g, node_t c, double eps, const SolveOptions& opts) {
  const auto start = Clock::now();
  check_seed(g, c);
  const TaylorParams params = make_taylor_params(eps, opts.rule);
  check_contractive(g);
  const std::span<const double> psi = params.psi;
  const std::vector<double> base = queue_thresholds(params);
  const double tol = params.solver_tolerance();
  const std::uint64_t cap = safety_cap(g, opts);
  const int degree = params.degree;

  SolveReport rep;
  rep.degree = degree;
  std::unordered_map<std::uint64_t, double> resid;
  std::deque<node_t> queue;
  resid[residual_key(0, c)] = 1.0;
  queue.push_back(c);
  double tracker = psi[0];

  auto add_residual = [&](int block, node_t u, double amount) {
    auto [it, inserted] = resid.try_emplace(residual_key(block, u), 0.0);
    if (inserted) queue.push_back(u);
    const double old = it->second;
    it->second = old + amount;
    return std::abs(old + amount) - std::abs(old);
  };

  bool stopped = false;
  for (int j = 0; j < degree && !stopped && !queue.empty(); ++j) {
    // Everything left in the queue belongs to block j now.
    const std::size_t zj = queue.size();
    const double relax_tol = base[j] / static_cast<double>(zj);
    if (opts.audit) {
      std::size_t live = 0;
      for (const auto& [key, v] : resid) live += (key_block(key) == j && v != 0.0);
      if (live > zj) throw std::logic_error("gexpmq: block holds more entries than Z_j");
    }
    for (std::size_t q = 0; q < zj; ++q) {
      const node_t i = queue.front();
      queue.pop_front();
      auto it = resid.find(residual_key(j, i));
      if (it == resid.end()) throw std::logic_error("gexpmq: queued entry missing from residual");
      const double rij = it->second;
      if (std::abs(rij) < relax_tol) {
        rep.skipped_mass += psi[j] * std::abs(rij);
        continue;
      }
      if (opts.max_steps && rep.steps >= opts.max_steps) {
        stopped = true;
        break;
      }
      if (rep.steps >= cap) {
        throw SolverError("gexpmq exceeded the relaxation cap of " + std::to_string(cap) +
                          " steps");
      }
      resid.erase(it);
      tracker += relax_step(g, psi, j, i, rij, rep.x, add_residual, true);
      ++rep.steps;
      rep.edge_touches += g.out_degree(i);
      if (opts.record_trace) rep.trace.push_back({j, i, rij, tracker});
      if (tracker <= tol) {
        tracker = map_weighted_sum(resid, psi);
        if (tracker <= tol) {
          stopped = true;
          rep.converged = true;
          break;
        }
      }
    }
  }
  if (!stopped) rep.converged = true;

  rep.final_tracker = tracker;
  if (opts.keep_residual) {
    for (const auto& [key, v] : resid) {
      if (v != 0.0) rep.residual.push_back({key_block(key), key_node(key), v});
    }
    std::sort(rep.residual.begin(), rep.residual.end(), [](const auto& a, const auto& b) {
      return a.block != b.block ? a.block < b.block : a.node < b.node;
    });
  }
  finish(rep, g, start);
  return rep;
}

std::vector<Entry> top_z_entries(const SparseVector& v, std::size_t z) {
  if (z == 0) throw std::invalid_argument("z must be >= 1");
  // Min-heap on "worse": smaller magnitude, then larger node index.
  auto worse = [](const Entry& a, const Entry& b) {
    const double ma = std::abs(a.value);
    const double mb = std::abs(b.value);
    return ma != mb ? ma < mb : a.node > b.node;
  };
  auto heap_cmp = [&worse](const Entry& a, const Entry& b) { return worse(b, a); };
  std::vector<Entry> heap;
  heap.reserve(std::min(z, v.nnz()));
  for (const auto& [i, val] : v) {
    const Entry e{i, val};
    if (heap.size() < z) {
      heap.push_back(e);
      std::push_heap(heap.begin(), heap.end(), heap_cmp);
    } else if (worse(heap.front(), e)) {
      std::pop_heap(heap.begin(), heap.end(), heap_cmp);
      heap.back() = e;
      std::push_heap(heap.begin(), heap.end(), heap_cmp);
    }
  }
  std::sort(heap.begin(), heap.end(), [](const Entry& a, const Entry& b) { return a.node < b.node; });
  return heap;
}

SparseVector top_z_filter(const SparseVector& v, std::size_t z) {
  const auto kept = top_z_entries(v, z);
  return SparseVector::from_entries(kept);
}

SolveReport expmimv(const CscGraph& g, node_t c, int degree, std::size_t z,
                    const SolveOptions& /*opts*/) {
  const auto start = Clock::now();
  check_seed(g, c);
  if (degree < 1) throw std::invalid_argument("Taylor degree must be >= 1");
  if (z < 1) throw std::invalid_argument("z must be >= 1");

  SolveReport rep;
  rep.degree = degree;
  SparseVector x;
  x.set(c, 1.0);
  for (int k = 0; k < degree; ++k) {
    const auto kept = top_z_entries(x, z);
    const double scale = 1.0 / static_cast<double>(degree - k);
    SparseVector next;
    next.reserve(2 * kept.size());
    for (const auto& e : kept) {
      const double s = e.value * scale;
      const auto rows = g.column_rows(e.node);
      const auto vals = g.column_values(e.node);
      for (std::size_t t = 0; t < rows.size(); ++t) next.add(rows[t], vals[t] * s);
      rep.edge_touches += rows.size();
      ++rep.steps;
    }
    rep.iterate_nnz.push_back(next.nnz());
    next.add(c, 1.0);
    x = std::move(next);
  }
  rep.x = std::move(x);
  rep.converged = true;
  finish(rep, g, start);
  return rep;
}

}  // namespace expgraph
