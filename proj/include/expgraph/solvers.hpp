#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "expgraph/graph.hpp"
#include "expgraph/sparse_vector.hpp"
#include "expgraph/taylor.hpp"

namespace expgraph {

struct SolveOptions {
  // Stop quietly after this many relaxations (0 = no limit). The result is
  // then uncertified: report.converged is false.
  std::uint64_t max_steps = 0;
  // Hard limit on relaxations; exceeding it throws SolverError.
  // 0 selects 100 * nnz(P).
  std::uint64_t safety_cap = 0;
  ThresholdRule rule = ThresholdRule::kStrict;
  bool record_trace = false;
  bool keep_residual = false;
  // Per-step invariant checks (heap order, Gauss-Southwell selection by
  // linear scan, queue block counts). Slow; throws std::logic_error.
  bool audit = false;
};

struct StepRecord {
  int block;
  node_t node;
  double value;    // residual entry relaxed
  double tracker;  // weighted residual sum after the step
};

struct ResidualEntry {
  int block;
  node_t node;
  double value;
};

struct SolveReport {
  SparseVector x;
  int degree = 0;
  double final_tracker = 0.0;
  // gexpmq only: psi-weighted magnitude of entries popped below threshold.
  // They stay in the residual and in final_tracker.
  double skipped_mass = 0.0;
  std::uint64_t steps = 0;
  std::uint64_t edge_touches = 0;
  double effective_matvecs = 0.0;
  double wallclock = 0.0;
  bool converged = false;
  std::vector<StepRecord> trace;
  std::vector<ResidualEntry> residual;
  // expmimv only: nonzeros of each product A [x]_z before e_c is added.
  std::vector<std::size_t> iterate_nnz;
};

// Adds m e_i to x and moves the block-(j+1) share m/(j+1) P e_i into the
// residual through add_residual(block, node, amount), which must return the
// change in |r| at that coordinate. No residual mass is created from block N.
// With collapse_last_block, mass bound for block N goes straight into x.
// Returns the exact change in sum_j psi_j |r_j|, counting removal of (j,i).
template <class AddResidual>
double relax_step(const CscGraph& g, std::span<const double> psi, int block, node_t i, double m,
                  SparseVector& x, AddResidual&& add_residual, bool collapse_last_block = false) {
  const int last = static_cast<int>(psi.size()) - 1;
  x.add(i, m);
  double delta = -psi[block] * std::abs(m);
  if (block >= last) return delta;
  const double scaled = m / static_cast<double>(block + 1);
  const auto rows = g.column_rows(i);
  const auto vals = g.column_values(i);
  if (collapse_last_block && block + 1 == last) {
    for (std::size_t k = 0; k < rows.size(); ++k) x.add(rows[k], scaled * vals[k]);
    return delta;
  }
  for (std::size_t k = 0; k < rows.size(); ++k) {
    delta += psi[block + 1] * add_residual(block + 1, rows[k], scaled * vals[k]);
  }
  return delta;
}

// Gauss-Southwell on the implicit Taylor block system: always relaxes the
// largest residual entry, kept in an indexed max-heap. Guarantees
// ||exp(P) e_c - x||_1 <= eps for ||P||_1 <= 1.
SolveReport gexpm(const CscGraph& g, node_t c, double eps, const SolveOptions& opts = {});

// Queue-ordered relaxation, one pass per Taylor block; entries below
// theta*eps / (N psi_j Z_j) when popped are skipped. Same guarantee.
SolveReport gexpmq(const CscGraph& g, node_t c, double eps, const SolveOptions& opts = {});

// Horner evaluation of T_N(A) e_c where every product only uses the z
// largest entries of the current iterate. No accuracy guarantee; work is
// O(N d z log z).
SolveReport expmimv(const CscGraph& g, node_t c, int degree, std::size_t z,
                    const SolveOptions& opts = {});

// The z largest-magnitude entries of v; ties keep the smaller node index.
SparseVector top_z_filter(const SparseVector& v, std::size_t z);
// Same selection, returned in ascending node order.
std::vector<Entry> top_z_entries(const SparseVector& v, std::size_t z);

// sum_j psi_j |r_j| over a residual listing.
double weighted_residual_sum(std::span<const ResidualEntry> residual, std::span<const double> psi);

}  // namespace expgraph
