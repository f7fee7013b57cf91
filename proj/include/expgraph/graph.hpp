#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "expgraph/sparse_vector.hpp"
#include "expgraph/types.hpp"

namespace expgraph {

// A directed arc src -> dst. Stored in column src, row dst of the adjacency.
struct Arc {
  node_t src;
  node_t dst;
};

struct DegreeStats {
  std::uint64_t d_max = 0;
  std::uint64_t d_min = 0;
  double edge_density = 0.0;  // nnz / n
};

// Compressed sparse column adjacency. Column i holds the out-links of node i,
// so a column-stochastic P = G D^{-1} is stored with val = 1/out_degree.
// Immutable once constructed.
class CscGraph {
 public:
  CscGraph() = default;

  // Validates every structural invariant; throws std::invalid_argument.
  CscGraph(std::size_t n, std::vector<offset_t> col_ptr, std::vector<node_t> row_idx,
           std::vector<double> val, std::vector<std::int64_t> labels = {});

  // Unit-weight graph from arcs. Duplicate arcs collapse into one; rows are
  // sorted within each column. With symmetrize, every arc also adds its
  // reverse.
  static CscGraph from_arcs(std::size_t n, std::span<const Arc> arcs, bool symmetrize = false);

  std::size_t num_nodes() const { return n_; }
  std::size_t nnz() const { return row_idx_.size(); }

  std::span<const offset_t> col_ptr() const { return col_ptr_; }
  std::span<const node_t> row_idx() const { return row_idx_; }
  std::span<const double> values() const { return val_; }
  std::span<const std::uint64_t> out_degree() const { return out_degree_; }

  std::uint64_t out_degree(node_t i) const { return out_degree_[i]; }
  std::span<const node_t> column_rows(node_t i) const {
    return {row_idx_.data() + col_ptr_[i], row_idx_.data() + col_ptr_[i + 1]};
  }
  std::span<const double> column_values(node_t i) const {
    return {val_.data() + col_ptr_[i], val_.data() + col_ptr_[i + 1]};
  }

  // Original ids of the dense nodes; empty when ids were already dense.
  std::span<const std::int64_t> labels() const { return labels_; }

  // Largest absolute column sum, i.e. the induced 1-norm.
  double one_norm() const { return one_norm_; }
  bool nonnegative() const { return nonnegative_; }
  // Every nonempty column sums to 1 within 1e-12 and entries are >= 0.
  bool is_stochastic() const { return stochastic_; }

 private:
  void finalize();

  std::size_t n_ = 0;
  std::vector<offset_t> col_ptr_{0};
  std::vector<node_t> row_idx_;
  std::vector<double> val_;
  std::vector<std::uint64_t> out_degree_;
  std::vector<std::int64_t> labels_;
  double one_norm_ = 0.0;
  bool nonnegative_ = true;
  bool stochastic_ = true;
};

// P = G D^{-1}: same pattern, column j scaled to 1/out_degree[j].
// Throws std::invalid_argument naming the first node with no out-links.
CscGraph normalize_to_stochastic(const CscGraph& g);

// Nonzeros of P e_i in row order. Throws std::out_of_range.
std::vector<Entry> column(const CscGraph& g, node_t i);

DegreeStats degree_stats(const CscGraph& g);

// y = P v over dense vectors.
std::vector<double> matvec(const CscGraph& g, std::span<const double> v);

// Converts x ~ exp(P) e_c into the matching column of exp(-L), where L is
// the normalized Laplacian I - D^{-1/2} G D^{-1/2}:
//   out_i = e^{-1} sqrt(d_c / d_i) x_i.
SparseVector laplacian_column_from_exp_column(const SparseVector& x,
                                              std::span<const std::uint64_t> degrees, node_t c);

}  // namespace expgraph
