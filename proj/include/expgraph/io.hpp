#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "expgraph/graph.hpp"
#include "expgraph/sparse_vector.hpp"

namespace expgraph {

enum class GraphFormat { kAuto, kSmat, kMtx, kEdgeList };

GraphFormat parse_graph_format(const std::string& name);

struct ReadOptions {
  GraphFormat format = GraphFormat::kAuto;
  // Add the reverse of every arc (edge lists and SMAT; symmetric
  // MatrixMarket files are always expanded).
  bool undirected = false;
  // Reject graphs with a node that has no out-links.
  bool require_out_links = true;
};

// Formats:
//   smat      "n n nnz" header, then nnz lines "src dst weight", 0-based.
//   mtx       MatrixMarket coordinate, 1-based, general or symmetric;
//             entry (i, j) is the arc i -> j.
//   edgelist  "src dst" per line, '#' comments, arbitrary integer ids that
//             are relabeled densely in ascending order.
// Weights are validated (finite) but loaded as unit weights; duplicate arcs
// collapse; zero-weight entries are dropped. Throws ParseError.
CscGraph read_graph(const std::string& path, const ReadOptions& opts = {});
CscGraph read_graph(std::istream& in, const ReadOptions& opts);

// SMAT, arcs in column-major order, weights printed with 17 digits.
void write_smat(const CscGraph& g, std::ostream& out);
void write_smat(const CscGraph& g, const std::string& path);

struct SolutionMeta {
  std::string graph;
  std::string algorithm;
  double param = 0.0;  // eps, or z for expmimv
  int degree = 0;
  node_t seed = 0;
};

struct Solution {
  SolutionMeta meta;
  std::vector<Entry> rows;  // descending value, ties by node
};

// Header lines "# key: value", then "node value" rows sorted by descending
// value with 17 significant digits.
void write_solution(const SparseVector& x, const SolutionMeta& meta, std::ostream& out);
void write_solution(const SparseVector& x, const SolutionMeta& meta, const std::string& path);
Solution read_solution(std::istream& in);
Solution read_solution(const std::string& path);

}  // namespace expgraph
