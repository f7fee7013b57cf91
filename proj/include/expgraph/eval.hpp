#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "expgraph/graph.hpp"
#include "expgraph/solvers.hpp"
#include "expgraph/sparse_vector.hpp"

namespace expgraph {

enum class ExcludePolicy { kNone, kSeedAndNeighbors };

const char* to_string(ExcludePolicy p);
ExcludePolicy parse_exclude_policy(const std::string& s);

struct PrecisionReport {
  std::size_t k = 0;            // requested
  std::size_t effective_k = 0;  // |S| after exclusion
  double precision = 0.0;
  ExcludePolicy excluded = ExcludePolicy::kNone;
};

// |S ∩ T| / |S| for the top-k node sets of truth (S) and approx (T), ranked
// by value with ties to the smaller node. Only stored nonzero entries are
// candidates. With kSeedAndNeighbors, c and its out-neighbors in g are
// removed first. If fewer than k candidates remain, effective_k shrinks.
PrecisionReport precision_at_k(const SparseVector& approx, const SparseVector& truth,
                               std::size_t k, ExcludePolicy exclude, const CscGraph& g, node_t c);

// Top-k node set used by precision_at_k, in rank order.
std::vector<node_t> top_k_nodes(const SparseVector& v, std::size_t k,
                                std::span<const node_t> excluded = {});

double one_norm_error(const SparseVector& approx, const SparseVector& truth);
double one_norm_error(const SparseVector& approx, std::span<const double> truth);

// (m, error) for m = 1..nnz: 1-norm left after keeping the m largest
// magnitudes. Nonincreasing in m.
std::vector<std::pair<std::size_t, double>> nnz_error_curve(const SparseVector& truth);

// edge_touches / nnz(P).
double work_accounting(const SolveReport& report, const CscGraph& g);

// One experiment measurement, one CSV row.
struct MetricRow {
  std::string graph;
  node_t seed = 0;
  std::string algorithm;
  double param = 0.0;  // eps for gexpm/gexpmq, z for expmimv
  std::string metric;
  double value = 0.0;
};

inline constexpr const char* kCsvHeader = "graph,seed,algorithm,param,metric,value";

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const MetricRow& row);

}  // namespace expgraph
